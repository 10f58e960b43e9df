#include <doctest.h>

#include <algorithm>

#include "etameta/engine.hpp"

using namespace etameta;

namespace {

std::shared_ptr<const MetacyclicView> meta(int p, int a, int b, int e, int d, Sign s) {
  return make_metacyclic(validate(p, a, b, e, d, s));
}

bool is_abelian_view(const FiniteGroupView& v) {
  for (Element g = 0; g < v.order(); ++g)
    for (Element h = 0; h < v.order(); ++h)
      if (v.multiply_unchecked(g, h) != v.multiply_unchecked(h, g)) return false;
  return true;
}

}  // namespace

TEST_CASE("presentation relations hold in every small metacyclic view") {
  for (int p : {2, 3, 5})
    for (int a = 1; a <= 5; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int e = 0; e <= a; ++e)
          for (int d = 0; d < a; ++d)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
              const auto g = try_validate({p, a, b, e, d, s});
              if (!g || group_order(*g) > 4096) continue;
              const auto v = make_metacyclic(*g);
              CAPTURE(g->to_string());
              CHECK(v->order() == group_order(*g));
              CHECK(power(*v, v->x(), static_cast<std::int64_t>(g->p_pow_alpha())) == 0);
              CHECK(element_order(*v, v->x()) == g->p_pow_alpha());
              CHECK(power(*v, v->y(), static_cast<std::int64_t>(g->p_pow_beta())) ==
                    power(*v, v->x(), static_cast<std::int64_t>(checked_pow(p, a - e).value())));
              CHECK(conjugate(*v, v->x(), v->y()) ==
                    power(*v, v->x(), static_cast<std::int64_t>(g->r())));
            }
}

TEST_CASE("metacyclic multiplication examples") {
  SUBCASE("semidihedral: x^y = x^3") {
    const auto v = meta(2, 3, 1, 0, 1, Sign::Negative);
    CHECK(conjugate(*v, v->x(), v->y()) == v->element(3, 0));
  }
  SUBCASE("dihedral: (y x^2)(y x^3) = x") {
    const auto v = meta(2, 3, 1, 0, 0, Sign::Negative);
    CHECK(multiply(*v, v->element(2, 1), v->element(3, 1)) == v->x());
  }
  SUBCASE("quaternion: y^2 = x^2, order(y) = 4") {
    const auto v = meta(2, 2, 1, 1, 0, Sign::Negative);
    CHECK(power(*v, v->y(), 2) == v->element(2, 0));
    CHECK(element_order(*v, v->y()) == 4);
  }
  SUBCASE("identity law on 100 elements of G_3(3,2,0,1,+)") {
    const auto v = meta(3, 3, 2, 0, 1, Sign::Positive);
    for (Element g = 0; g < 100; ++g) {
      CHECK(multiply(*v, g, v->identity()) == g);
      CHECK(multiply(*v, v->identity(), g) == g);
    }
  }
}

TEST_CASE("encode and decode are inverse") {
  const auto v = meta(2, 4, 3, 0, 2, Sign::Negative);
  for (Element g = 0; g < v->order(); ++g) CHECK(v->encode(v->decode(g)) == g);
  CHECK(v->decode(v->element(5, 3)) == GroupElement{5, 3});
  CHECK(v->element(3, 0) == power(*v, v->x(), 3));
  CHECK(v->element(0, 2) == power(*v, v->y(), 2));
}

TEST_CASE("checked operations") {
  const auto v = meta(2, 2, 1, 1, 0, Sign::Negative);
  CHECK(inverse(*v, 0) == 0);
  CHECK(element_order(*v, 0) == 1);
  for (Element g = 0; g < v->order(); ++g) {
    CHECK(power(*v, g, -1) == inverse(*v, g));
    CHECK(conjugate(*v, g, 0) == g);
  }
  CHECK_THROWS_AS(multiply(*v, 8, 0), Error);
  CHECK_THROWS_AS(inverse(*v, 99), Error);
  try {
    multiply(*v, 0, 8);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ForeignHandle);
  }
}

TEST_CASE("budget") {
  try {
    make_metacyclic(validate(2, 9, 9, 0, 0, Sign::Positive), 1 << 12);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
  }
}

TEST_CASE("direct products") {
  const auto klein = make_direct_product(2, 1, 1);
  CHECK(klein->order() == 4);
  CHECK(is_abelian_view(*klein));
  for (Element g = 1; g < 4; ++g) CHECK(element_order(*klein, g) == 2);
  const auto c8 = make_direct_product(2, 3, 0);
  CHECK(c8->order() == 8);
  CHECK(std::ranges::count_if(std::vector<Element>{0, 1, 2, 3, 4, 5, 6, 7}, [&](Element g) {
          return element_order(*c8, g) == 8;
        }) == 4);
  const auto g81 = make_direct_product(3, 2, 2);
  CHECK(g81->order() == 81);
  CHECK(is_abelian_view(*g81));
  for (Element g = 0; g < 81; ++g)
    for (Element h = 0; h < 81; ++h) CHECK(conjugate(*g81, g, h) == g);
}

TEST_CASE("subgroup closure") {
  const auto v = meta(2, 4, 3, 0, 2, Sign::Negative);
  const std::vector<Element> x{v->x()};
  CHECK(subgroup_closure(v, x).size() == 16);
  const std::vector<Element> x8{v->element(8, 0)};
  const auto n = subgroup_closure(v, x8);
  CHECK(n.size() == 2);
  CHECK(is_normal(n));

  const auto w = meta(2, 3, 2, 0, 0, Sign::Negative);
  const std::vector<Element> m_gens{w->x(), w->element(0, 2)};
  CHECK(subgroup_closure(w, m_gens).size() == 16);
  CHECK(w->order() == 32);

  CHECK(whole_group(v).size() == v->order());
  CHECK(trivial_subgroup(v).size() == 1);
  const std::vector<Element> y{v->y()};
  CHECK_FALSE(is_normal(subgroup_closure(v, y)));
}

TEST_CASE("quotient views") {
  const auto v = meta(2, 4, 3, 0, 2, Sign::Negative);
  const std::vector<Element> x8{v->element(8, 0)};
  const auto q = quotient_view(subgroup_closure(v, x8));
  CHECK(q->order() == 64);
  CHECK(q->order() * q->kernel_size() == v->order());
  for (Element g = 0; g < v->order(); ++g)
    CHECK(q->coset_of(q->representative(q->coset_of(g))) == q->coset_of(g));

  CHECK(quotient_view(whole_group(v))->order() == 1);

  const auto d16 = meta(2, 3, 1, 0, 0, Sign::Negative);
  const std::vector<Element> x4{d16->element(4, 0)};
  const auto d8 = quotient_view(subgroup_closure(d16, x4));
  CHECK(element_order_profile(*d8) ==
        element_order_profile(*meta(2, 2, 1, 0, 0, Sign::Negative)));

  const std::vector<Element> y{v->y()};
  try {
    quotient_view(subgroup_closure(v, y));
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormal);
  }
}

TEST_CASE("subgroup views") {
  const auto v = meta(2, 3, 2, 0, 0, Sign::Negative);
  const std::vector<Element> gens{v->x(), v->element(0, 2)};
  const auto m = subgroup_closure(v, gens);
  const auto s = subgroup_view(m);
  CHECK(s->order() == m.size());
  for (Element local = 0; local < s->order(); ++local) {
    CHECK(s->to_local(s->to_ambient(local)) == local);
    CHECK(m.contains(s->to_ambient(local)));
  }
  CHECK(s->to_ambient(0) == 0);
  CHECK(subgroup_closure(v, std::vector<Element>(s->generators().size())).size() == 1);
}
