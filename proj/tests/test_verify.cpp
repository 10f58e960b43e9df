#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "etameta/verify.hpp"

using namespace etameta;

namespace {

GroupParams neg(int a, int b, int e, int d) { return validate(2, a, b, e, d, Sign::Negative); }

const CheckResult* find_check(const std::vector<CheckResult>& checks, std::string_view name) {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool same_reports(const std::vector<EtaReport>& a, const std::vector<EtaReport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].params != b[i].params || a[i].eta_formula != b[i].eta_formula ||
        a[i].eta_oracle != b[i].eta_oracle || a[i].match != b[i].match ||
        a[i].case_tag != b[i].case_tag)
      return false;
  return true;
}

}  // namespace

TEST_CASE("verify_tuple") {
  auto r = verify_tuple(neg(4, 3, 0, 2));
  CHECK(r.eta_formula == 6);
  CHECK(r.eta_oracle == 6u);
  CHECK(r.match == true);
  CHECK(r.ok());

  r = verify_tuple(neg(4, 1, 0, 1));
  CHECK(r.eta_oracle == 3u);
  CHECK(r.match == true);
  CHECK_FALSE(r.bound_applies);

  r = verify_tuple(validate(3, 3, 2, 0, 1, Sign::Positive));
  CHECK(r.eta_formula == 12);
  CHECK(r.eta_oracle == 12u);
  CHECK(r.abelianization_match == true);

  SUBCASE("above the budget the oracle is skipped, not failed") {
    r = verify_tuple(neg(8, 8, 0, 2), {.run_oracle = true, .oracle_budget = 4096});
    CHECK_FALSE(r.eta_oracle);
    CHECK_FALSE(r.match);
    CHECK(r.ok());
  }
}

TEST_CASE("verify_theorems examples") {
  auto checks = verify_theorems(neg(5, 3, 0, 3));
  const auto* c = find_check(checks, "negative_quotient_equality");
  REQUIRE(c);
  CHECK(c->passed);

  checks = verify_theorems(neg(3, 2, 0, 0));
  c = find_check(checks, "index_two_orbit_count");
  REQUIRE(c);
  CHECK(c->passed);
  CHECK(c->detail.find("6 vs 6") != std::string::npos);

  checks = verify_theorems(neg(3, 2, 1, 1));
  c = find_check(checks, "index_two_orbit_count coinciding exceptions");
  REQUIRE(c);
  CHECK(c->passed);
  CHECK_FALSE(find_check(checks, "index_two_orbit_count"));

  checks = verify_theorems(validate(3, 3, 2, 0, 1, Sign::Positive));
  for (const auto& check : checks) {
    CAPTURE(check.name);
    CAPTURE(check.detail);
    CHECK(check.passed);
  }
  c = find_check(checks, "class_is_coset outside powers");
  REQUIRE(c);
  CHECK(c->detail.rfind("216 elements, 0 failures", 0) == 0);

  checks = verify_theorems(neg(8, 8, 0, 2), 4096);
  REQUIRE(checks.size() == 1);
  CHECK_FALSE(checks[0].passed);
}

TEST_CASE("all theorem checks pass on small tuples") {
  for (int p : {2, 3})
    for (const auto& g : grid_tuples({.p = p, .max_order_exponent = p == 2 ? 6 : 4})) {
      for (const auto& c : verify_theorems(g)) {
        CAPTURE(g.to_string());
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.passed);
      }
    }
}

TEST_CASE("classes outside powers and sampled conjugacy") {
  const auto g = validate(3, 3, 2, 0, 1, Sign::Positive);
  CHECK(classes_outside_powers(g).passed);
  CHECK(conjugacy_coset_sample(g).passed);
  CHECK(conjugacy_coset_sample(neg(4, 3, 0, 2), 32).passed);
}

TEST_CASE("index-p subgroup") {
  const auto v = make_metacyclic(neg(3, 2, 0, 0));
  const auto m = index_p_subgroup(v);
  CHECK(m.size() * 2 == v->order());
  CHECK(is_normal(m));
}

TEST_CASE("sweeps") {
  SUBCASE("p = 2 up to 2^6 all match") {
    const auto reports = sweep({.p = 2, .max_order_exponent = 6});
    CHECK(reports.size() == grid_tuples({.p = 2, .max_order_exponent = 6}).size());
    for (const auto& r : reports) {
      CAPTURE(r.params.to_string());
      CHECK(r.match == true);
      CHECK(r.ok());
    }
  }
  SUBCASE("p = 3 up to 3^5, positive") {
    for (const auto& r : sweep({.p = 3, .max_order_exponent = 5, .signs = {Sign::Positive}})) {
      CAPTURE(r.params.to_string());
      CHECK(r.match == true);
      // eta >= alpha + beta except for cyclic groups, where eta = 1.
      if (r.params.epsilon() == r.params.alpha())
        CHECK(r.eta_formula == 1);
      else
        CHECK(r.eta_formula >= static_cast<std::uint64_t>(r.params.order_exponent()));
    }
  }
  SUBCASE("empty grid") { CHECK(sweep({.p = 2, .max_order_exponent = 1}).empty()); }
}

TEST_CASE("grid enumerates valid tuples in lexicographic order") {
  const SweepGrid grid{.p = 2, .max_order_exponent = 9};
  const auto tuples = grid_tuples(grid);
  std::set<GroupParams> unique(tuples.begin(), tuples.end());
  CHECK(unique.size() == tuples.size());
  for (std::size_t i = 1; i < tuples.size(); ++i) {
    const auto a = tuples[i - 1].raw(), b = tuples[i].raw();
    CHECK(std::tuple(a.alpha, a.beta, a.epsilon, a.delta, a.sign) <
          std::tuple(b.alpha, b.beta, b.epsilon, b.delta, b.sign));
  }
  std::size_t valid = 0;
  for (int a = 1; a < 9; ++a)
    for (int b = 1; a + b <= 9; ++b)
      for (int e = 0; e <= a; ++e)
        for (int d = 0; d <= a; ++d)
          for (Sign s : {Sign::Positive, Sign::Negative})
            if (try_validate({2, a, b, e, d, s})) ++valid;
  CHECK(valid == tuples.size());
}

TEST_CASE("sweep output does not depend on thread count") {
  const SweepGrid grid{.p = 2, .max_order_exponent = 8};
  const auto one = sweep(grid, 1);
  CHECK(same_reports(one, sweep(grid, 2)));
  CHECK(same_reports(one, sweep(grid, 4)));
  CHECK(same_reports(one, sweep(grid, 1)));
}

TEST_CASE("every case tag appears in the p = 2 grid up to 2^12") {
  std::set<CaseTag> seen;
  for (const auto& r : sweep({.p = 2, .max_order_exponent = 12, .oracle_budget = 0}))
    seen.insert(r.case_tag);
  for (CaseTag t : kAllCaseTags) {
    CAPTURE(to_string(t));
    CHECK(seen.count(t) == 1);
  }
}

TEST_CASE("group axioms") {
  const auto small = make_metacyclic(neg(4, 3, 0, 2));
  auto report = check_group_axioms_exhaustive(*small);
  CHECK(report.ok());
  CHECK(report.checked > 0);
  const auto large = make_metacyclic(neg(7, 5, 1, 0));
  report = check_group_axioms_sampled(*large, 10000, 1);
  CHECK(report.ok());
  CHECK(report.checked >= 10000);
}

TEST_CASE("parallel_for") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::ranges::all_of(hits, [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(50, 3,
                               [](std::size_t i) {
                                 if (i == 17) throw std::runtime_error("boom");
                               }),
                  std::runtime_error);
}

TEST_CASE("thread count from the environment") {
  ::setenv("ETA_META_THREADS", "3", 1);
  CHECK(default_thread_count() == 3);
  ::setenv("ETA_META_THREADS", "junk", 1);
  CHECK(default_thread_count() >= 1);
  ::unsetenv("ETA_META_THREADS");
}
