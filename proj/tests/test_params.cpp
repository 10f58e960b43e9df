#include <doctest.h>

#include "etameta/params.hpp"

using namespace etameta;

namespace {

ErrorKind kind_of(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t e, std::int64_t d,
                  Sign s) {
  try {
    validate(p, a, b, e, d, s);
  } catch (const Error& err) {
    return err.kind();
  }
  FAIL("expected validate to throw");
  return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("validate accepts a negative tuple and derives r") {
  const GroupParams g = validate(2, 4, 3, 0, 2, Sign::Negative);
  CHECK(g.r() == 3);
  CHECK(g.p_pow_alpha() == 16);
  CHECK(g.p_pow_beta() == 8);
  CHECK(g.to_string() == "G_2(4,3,0,2,-)");
}

TEST_CASE("validate rejects with the right error kind") {
  CHECK(kind_of(3, 3, 2, 2, 2, Sign::Positive) == ErrorKind::ConstraintViolated);
  CHECK(kind_of(3, 3, 2, 0, 1, Sign::Negative) == ErrorKind::NegativeTypeRequiresP2);
  CHECK(kind_of(4, 2, 1, 0, 0, Sign::Positive) == ErrorKind::NonPrimeP);
  CHECK(kind_of(2, 0, 1, 0, 0, Sign::Positive) == ErrorKind::ConstraintViolated);
  CHECK(kind_of(2, 3, 1, -1, 0, Sign::Positive) == ErrorKind::ConstraintViolated);
  CHECK(kind_of(2, 3, 2, 0, 3, Sign::Positive) == ErrorKind::ConstraintViolated);  // delta > alpha-1
  CHECK(kind_of(2, 3, 1, 2, 0, Sign::Negative) == ErrorKind::ConstraintViolated);  // epsilon > 1
  CHECK(kind_of(2, 3, 1, 0, 2, Sign::Negative) == ErrorKind::ConstraintViolated);  // alpha < delta+2
  CHECK(kind_of(2, 3, 1, 1, 1, Sign::Negative) == ErrorKind::ConstraintViolated);  // beta < delta+1
  CHECK(kind_of(2, 40, 30, 0, 0, Sign::Positive) == ErrorKind::Overflow);
}

TEST_CASE("constraint messages name the violated constraint") {
  try {
    validate(3, 3, 2, 2, 2, Sign::Positive);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("delta + epsilon") != std::string::npos);
  }
}

TEST_CASE("validate is idempotent through raw()") {
  for (int p : {2, 3, 5})
    for (int a = 1; a <= 5; ++a)
      for (int b = 1; b <= 4; ++b)
        for (int e = 0; e <= a; ++e)
          for (int d = 0; d <= a; ++d)
            for (Sign s : {Sign::Positive, Sign::Negative}) {
              const auto g = try_validate({p, a, b, e, d, s});
              if (!g) continue;
              CHECK(validate(g->raw()) == *g);
            }
}

TEST_CASE("classify") {
  SUBCASE("maximal class families") {
    CHECK(classify(validate(2, 4, 1, 0, 0, Sign::Negative)).maximal_class_family ==
          MaximalClassFamily::Dihedral);
    CHECK(classify(validate(2, 3, 1, 1, 0, Sign::Negative)).maximal_class_family ==
          MaximalClassFamily::GeneralizedQuaternion);
    CHECK(classify(validate(2, 4, 1, 0, 1, Sign::Negative)).maximal_class_family ==
          MaximalClassFamily::Semidihedral);
    CHECK_FALSE(classify(validate(2, 4, 2, 0, 1, Sign::Negative)).maximal_class_family);
  }
  SUBCASE("canonical rewrite of epsilon = delta = 1") {
    const auto c = classify(validate(2, 4, 2, 1, 1, Sign::Negative));
    CHECK(c.canonical_params == validate(2, 4, 2, 1, 0, Sign::Negative));
    CHECK(classify(c.canonical_params).canonical_params == c.canonical_params);
  }
  SUBCASE("abelian exactly when delta = 0 in positive type") {
    CHECK(classify(validate(3, 2, 1, 0, 0, Sign::Positive)).is_abelian);
    CHECK_FALSE(classify(validate(3, 3, 2, 0, 1, Sign::Positive)).is_abelian);
    CHECK_FALSE(classify(validate(2, 2, 1, 1, 0, Sign::Negative)).is_abelian);
  }
  CHECK(classify(validate(2, 4, 3, 0, 2, Sign::Negative)).group_order_exponent == 7);
}

TEST_CASE("canonicalization is idempotent on every small tuple") {
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; b <= 5; ++b)
      for (int e = 0; e <= 1; ++e)
        for (int d = 0; d <= a; ++d) {
          const auto g = try_validate({2, a, b, e, d, Sign::Negative});
          if (!g) continue;
          const GroupParams c = classify(*g).canonical_params;
          CHECK(classify(c).canonical_params == c);
        }
}

TEST_CASE("group order") {
  CHECK(group_order(validate(2, 4, 3, 0, 2, Sign::Negative)) == 128);
  CHECK(group_order(validate(2, 2, 1, 1, 0, Sign::Negative)) == 8);
  CHECK(group_order(validate(5, 2, 2, 0, 0, Sign::Positive)) == 625);
  CHECK_THROWS_AS(materializable_order(validate(2, 10, 10, 0, 0, Sign::Positive), 1 << 16), Error);
}

TEST_CASE("helpers") {
  CHECK(sign_token(Sign::Negative) == '-');
  CHECK(parse_sign("+") == Sign::Positive);
  CHECK(parse_sign("-") == Sign::Negative);
  CHECK_FALSE(parse_sign("x"));
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(checked_pow(2, 62) == (std::uint64_t{1} << 62));
  CHECK_FALSE(checked_pow(2, 64));
}
