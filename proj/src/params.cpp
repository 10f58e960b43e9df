#include "etameta/params.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <tuple>

namespace etameta {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPrimeP: return "NonPrimeP";
    case ErrorKind::NegativeTypeRequiresP2: return "NegativeTypeRequiresP2";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ForeignHandle: return "ForeignHandle";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::RankExceeded: return "RankExceeded";
    case ErrorKind::NegativeTypeUnsupported: return "NegativeTypeUnsupported";
    case ErrorKind::DeltaZeroUndefined: return "DeltaZeroUndefined";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

char sign_token(Sign sign) noexcept { return sign == Sign::Positive ? '+' : '-'; }

std::optional<Sign> parse_sign(std::string_view token) noexcept {
  if (token == "+") return Sign::Positive;
  if (token == "-") return Sign::Negative;
  return std::nullopt;
}

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) noexcept {
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 63;
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && result > kLimit / base) return std::nullopt;
    result *= base;
  }
  return result;
}

namespace {

[[noreturn]] void violated(const std::string& constraint, const RawParams& raw) {
  std::ostringstream os;
  os << "King constraint violated: " << constraint << " (p=" << raw.p
     << ", alpha=" << raw.alpha << ", beta=" << raw.beta
     << ", epsilon=" << raw.epsilon << ", delta=" << raw.delta
     << ", sign=" << sign_token(raw.sign) << ")";
  throw Error(ErrorKind::ConstraintViolated, os.str());
}

}  // namespace

GroupParams validate(const RawParams& raw) {
  if (!is_prime(raw.p) || raw.p > std::numeric_limits<int>::max())
    throw Error(ErrorKind::NonPrimeP,
                "p must be a prime, got " + std::to_string(raw.p));
  if (raw.sign == Sign::Negative && raw.p != 2)
    throw Error(ErrorKind::NegativeTypeRequiresP2,
                "negative type only exists for p = 2, got p = " +
                    std::to_string(raw.p));

  if (raw.alpha <= 0) violated("alpha > 0", raw);
  if (raw.beta <= 0) violated("beta > 0", raw);
  if (raw.epsilon < 0) violated("epsilon >= 0", raw);
  if (raw.delta < 0) violated("delta >= 0", raw);
  if (raw.delta > std::min(raw.alpha - 1, raw.beta))
    violated("delta <= min(alpha - 1, beta)", raw);
  if (raw.delta + raw.epsilon > raw.alpha) violated("delta + epsilon <= alpha", raw);
  if (raw.sign == Sign::Negative && raw.epsilon > 1)
    violated("epsilon in {0, 1} for negative type", raw);
  if (raw.p == 2 && raw.alpha - raw.delta <= 1)
    violated("alpha - delta > 1 for p = 2", raw);
  if (raw.sign == Sign::Negative && raw.epsilon == 0 &&
      !(raw.alpha >= raw.delta + 2 && raw.beta >= raw.delta))
    violated("alpha >= delta + 2 and beta >= delta for negative type with epsilon = 0",
             raw);
  if (raw.sign == Sign::Negative && raw.epsilon == 1 && raw.beta < raw.delta + 1)
    violated("beta >= delta + 1 for negative type with epsilon = 1", raw);

  const auto p = static_cast<std::uint64_t>(raw.p);
  if (raw.alpha + raw.beta > 63 ||
      !checked_pow(p, static_cast<unsigned>(raw.alpha + raw.beta)))
    throw Error(ErrorKind::Overflow, "group order p^(alpha+beta) exceeds 2^63");

  GroupParams out;
  out.p_ = static_cast<int>(raw.p);
  out.alpha_ = static_cast<int>(raw.alpha);
  out.beta_ = static_cast<int>(raw.beta);
  out.epsilon_ = static_cast<int>(raw.epsilon);
  out.delta_ = static_cast<int>(raw.delta);
  out.sign_ = raw.sign;
  out.p_pow_alpha_ = *checked_pow(p, static_cast<unsigned>(raw.alpha));
  out.p_pow_beta_ = *checked_pow(p, static_cast<unsigned>(raw.beta));
  const std::uint64_t base =
      *checked_pow(p, static_cast<unsigned>(raw.alpha - raw.delta));
  // base >= p, so base - 1 never underflows.
  out.r_ = (raw.sign == Sign::Positive ? base + 1 : base - 1) % out.p_pow_alpha_;
  return out;
}

GroupParams validate(std::int64_t p, std::int64_t alpha, std::int64_t beta,
                     std::int64_t epsilon, std::int64_t delta, Sign sign) {
  return validate(RawParams{p, alpha, beta, epsilon, delta, sign});
}

std::optional<GroupParams> try_validate(const RawParams& raw) noexcept {
  try {
    return validate(raw);
  } catch (const Error&) {
    return std::nullopt;
  }
}

RawParams GroupParams::raw() const noexcept {
  return RawParams{p_, alpha_, beta_, epsilon_, delta_, sign_};
}

std::string GroupParams::to_string() const {
  std::ostringstream os;
  os << "G_" << p_ << '(' << alpha_ << ',' << beta_ << ',' << epsilon_ << ','
     << delta_ << ',' << sign_token(sign_) << ')';
  return os.str();
}

std::strong_ordering operator<=>(const GroupParams& a, const GroupParams& b) noexcept {
  auto key = [](const GroupParams& g) {
    return std::tuple(g.p_, g.alpha_, g.beta_, g.epsilon_, g.delta_,
                      g.sign_ == Sign::Positive ? 0 : 1);
  };
  return key(a) <=> key(b);
}

std::string_view to_string(MaximalClassFamily family) noexcept {
  switch (family) {
    case MaximalClassFamily::Dihedral: return "dihedral";
    case MaximalClassFamily::GeneralizedQuaternion: return "generalized_quaternion";
    case MaximalClassFamily::Semidihedral: return "semidihedral";
  }
  return "unknown";
}

Classification classify(const GroupParams& params) {
  const bool negative = params.sign() == Sign::Negative;

  std::optional<MaximalClassFamily> family;
  if (negative && params.beta() == 1) {
    if (params.epsilon() == 1)
      family = MaximalClassFamily::GeneralizedQuaternion;
    else if (params.delta() == 1)
      family = MaximalClassFamily::Semidihedral;
    else
      family = MaximalClassFamily::Dihedral;
  }

  GroupParams canonical = params;
  if (negative && params.epsilon() == 1 && params.delta() == 1 &&
      params.alpha() >= 3 && params.beta() >= 2)
    canonical = validate(params.p(), params.alpha(), params.beta(), 1, 0, Sign::Negative);

  return Classification{
      .group_type = params.sign(),
      .is_abelian = !negative && params.delta() == 0,
      .maximal_class_family = family,
      .canonical_params = canonical,
      .group_order_exponent = params.order_exponent(),
  };
}

std::uint64_t group_order(const GroupParams& params) {
  auto order = checked_pow(static_cast<std::uint64_t>(params.p()),
                           static_cast<unsigned>(params.order_exponent()));
  if (!order) throw Error(ErrorKind::Overflow, "group order exceeds 2^63");
  return *order;
}

std::uint64_t materializable_order(const GroupParams& params, std::uint64_t budget) {
  const std::uint64_t order = group_order(params);
  if (order > budget)
    throw Error(ErrorKind::BudgetExceeded,
                params.to_string() + " has order " + std::to_string(order) +
                    ", above the enumeration budget " + std::to_string(budget));
  return order;
}

}  // namespace etameta
