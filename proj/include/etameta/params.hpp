#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "etameta/error.hpp"

namespace etameta {

enum class Sign { Positive, Negative };

char sign_token(Sign sign) noexcept;  // '+' or '-'
std::optional<Sign> parse_sign(std::string_view token) noexcept;

// Unvalidated integer tuple as supplied by a caller.
struct RawParams {
  std::int64_t p = 2;
  std::int64_t alpha = 1;
  std::int64_t beta = 1;
  std::int64_t epsilon = 0;
  std::int64_t delta = 0;
  Sign sign = Sign::Positive;
};

/// King parameters of a metacyclic p-group
///
///   < x, y | x^(p^alpha) = 1, y^(p^beta) = x^(p^(alpha-epsilon)), x^y = x^r >
///
/// with r = p^(alpha-delta) + 1 (positive type) or p^(alpha-delta) - 1
/// (negative type). Instances only exist in validated form; use validate().
class GroupParams {
 public:
  int p() const noexcept { return p_; }
  int alpha() const noexcept { return alpha_; }
  int beta() const noexcept { return beta_; }
  int epsilon() const noexcept { return epsilon_; }
  int delta() const noexcept { return delta_; }
  Sign sign() const noexcept { return sign_; }

  /// r reduced mod p^alpha.
  std::uint64_t r() const noexcept { return r_; }
  std::uint64_t p_pow_alpha() const noexcept { return p_pow_alpha_; }
  std::uint64_t p_pow_beta() const noexcept { return p_pow_beta_; }

  int order_exponent() const noexcept { return alpha_ + beta_; }

  RawParams raw() const noexcept;
  std::string to_string() const;  // G_p(alpha,beta,epsilon,delta,sign)

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
  friend std::strong_ordering operator<=>(const GroupParams& a,
                                          const GroupParams& b) noexcept;

 private:
  friend GroupParams validate(const RawParams& raw);
  GroupParams() = default;

  int p_ = 2;
  int alpha_ = 1;
  int beta_ = 1;
  int epsilon_ = 0;
  int delta_ = 0;
  Sign sign_ = Sign::Positive;
  std::uint64_t r_ = 0;
  std::uint64_t p_pow_alpha_ = 1;
  std::uint64_t p_pow_beta_ = 1;
};

/// Checks a tuple against King's constraints. Throws Error with kind
/// NonPrimeP, NegativeTypeRequiresP2, ConstraintViolated (message names the
/// violated constraint) or Overflow (order does not fit in 63 bits).
GroupParams validate(const RawParams& raw);

GroupParams validate(std::int64_t p, std::int64_t alpha, std::int64_t beta,
                     std::int64_t epsilon, std::int64_t delta, Sign sign);

// Non-throwing variant for enumerating grids.
std::optional<GroupParams> try_validate(const RawParams& raw) noexcept;

bool is_prime(std::int64_t n) noexcept;

enum class MaximalClassFamily { Dihedral, GeneralizedQuaternion, Semidihedral };

std::string_view to_string(MaximalClassFamily family) noexcept;

struct Classification {
  Sign group_type;
  bool is_abelian;
  std::optional<MaximalClassFamily> maximal_class_family;
  // (alpha, beta, 1, 1, -) rewritten to the isomorphic (alpha, beta, 1, 0, -).
  GroupParams canonical_params;
  int group_order_exponent;
};

Classification classify(const GroupParams& params);

/// p^(alpha+beta); Error(Overflow) if it does not fit.
std::uint64_t group_order(const GroupParams& params);

/// As group_order, but throws Error(BudgetExceeded) above `budget`.
std::uint64_t materializable_order(const GroupParams& params,
                                   std::uint64_t budget);

/// Checked integer power; nullopt on overflow past 2^63.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept;

}  // namespace etameta
