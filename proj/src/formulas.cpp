#include "etameta/formulas.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace etameta {

__extension__ typedef unsigned __int128 u128;

namespace {

constexpr std::array<std::pair<CaseTag, std::string_view>, 11> kTagNames{{
    {CaseTag::Eta3Family, "eta3_family"},
    {CaseTag::PositiveViaAbelianizationI, "positive_via_abelianization_i"},
    {CaseTag::PositiveViaAbelianizationII, "positive_via_abelianization_ii"},
    {CaseTag::NegEps0Beta2, "neg_eps0_beta2"},
    {CaseTag::NegEps0Large, "neg_eps0_large"},
    {CaseTag::NegEps1Beta2, "neg_eps1_beta2"},
    {CaseTag::NegEps1Alpha2, "neg_eps1_alpha2"},
    {CaseTag::NegEps1LargeAgeB, "neg_eps1_large_ageb"},
    {CaseTag::NegEps1LargeAltB, "neg_eps1_large_altb"},
    {CaseTag::NegDeltaGe2Beta2, "neg_delta_ge2_beta2"},
    {CaseTag::NegDeltaGe2, "neg_delta_ge2"},
}};

std::uint64_t exact_half(std::uint64_t value, const GroupParams& params) {
  if (value % 2 != 0)
    throw Error(ErrorKind::Internal,
                "odd g_2 value " + std::to_string(value) + " halved for " + params.to_string());
  return value / 2;
}

}  // namespace

std::string_view to_string(CaseTag tag) noexcept {
  for (const auto& [t, name] : kTagNames)
    if (t == tag) return name;
  return "unknown";
}

std::optional<CaseTag> parse_case_tag(std::string_view text) noexcept {
  for (const auto& [t, name] : kTagNames)
    if (name == text) return t;
  return std::nullopt;
}

std::uint64_t g_p(int p, int a, int b) {
  if (a < 0 || b < 0) throw Error(ErrorKind::ConstraintViolated, "g_p needs a, b >= 0");
  const int k = std::max(a, b);
  const int l = std::min(a, b);
  if (l == 0) return 1;
  const auto scale = checked_pow(static_cast<std::uint64_t>(p), static_cast<unsigned>(l - 1));
  const auto up = static_cast<u128>(p);
  const u128 factor = static_cast<u128>(k - l) * (up - 1) + up + 1;
  if (!scale || factor * *scale > (static_cast<u128>(1) << 63))
    throw Error(ErrorKind::Overflow, "g_p value exceeds 2^63");
  return static_cast<std::uint64_t>(factor * *scale);
}

std::pair<int, int> abelianization_type(const GroupParams& params) {
  if (params.sign() == Sign::Negative)
    throw Error(ErrorKind::NegativeTypeUnsupported,
                "no closed-form abelianization for negative type " + params.to_string());
  const int alpha = params.alpha(), beta = params.beta();
  const int epsilon = params.epsilon(), delta = params.delta();
  if (delta >= epsilon || alpha >= beta + epsilon) return {alpha - delta, beta};
  return {alpha - epsilon, beta + epsilon - delta};
}

GroupParams quotient_params(const GroupParams& params) {
  const int delta = params.delta();
  if (delta == 0)
    throw Error(ErrorKind::DeltaZeroUndefined,
                "quotient by <x^(p^(alpha-delta+1))> is undefined for delta = 0");
  if (delta == 1) return params;
  const int epsilon = params.epsilon() >= delta - 1 ? params.epsilon() - delta + 1 : 0;
  return validate(params.p(), params.alpha() - delta + 1, params.beta(), epsilon, 1,
                  params.sign());
}

EtaFormulaResult eta_formula(const GroupParams& params) {
  const Classification cls = classify(params);
  const GroupParams& g = cls.canonical_params;
  const int alpha = g.alpha(), beta = g.beta(), epsilon = g.epsilon(), delta = g.delta();

  if (g.sign() == Sign::Positive) {
    const auto ab = abelianization_type(g);
    const bool case_one = delta >= epsilon || alpha >= beta + epsilon;
    return EtaFormulaResult{
        .eta = g_p(g.p(), ab.first, ab.second),
        .case_tag = case_one ? CaseTag::PositiveViaAbelianizationI
                             : CaseTag::PositiveViaAbelianizationII,
        .abelianization = ab,
    };
  }

  auto result = [](std::uint64_t eta, CaseTag tag) {
    return EtaFormulaResult{.eta = eta, .case_tag = tag, .abelianization = std::nullopt};
  };
  const auto a = static_cast<std::uint64_t>(alpha);
  const auto b = static_cast<std::uint64_t>(beta);

  if (beta == 1) return result(3, CaseTag::Eta3Family);

  if (delta >= 2) {
    if (beta == 2) return result(a + 1, CaseTag::NegDeltaGe2Beta2);
    return result(exact_half(g_p(2, alpha - delta + 1, beta - 1), g) + 2, CaseTag::NegDeltaGe2);
  }

  if (epsilon == 0) {
    if (beta == 2) return result(delta == 0 ? a + 3 : a + 2, CaseTag::NegEps0Beta2);
    return result(exact_half(g_p(2, alpha, beta - 1), g) + (delta == 0 ? 3 : 2),
                  CaseTag::NegEps0Large);
  }

  // epsilon = 1 leaves delta = 0 after canonicalization.
  if (delta != 0)
    throw Error(ErrorKind::Internal, "dispatcher reached epsilon = 1, delta = 1 for " +
                                         params.to_string());
  if (beta == 2) return result(a + 2, CaseTag::NegEps1Beta2);
  if (alpha == 2) return result(b + 2, CaseTag::NegEps1Alpha2);
  if (alpha >= beta)
    return result(exact_half(g_p(2, alpha, beta - 1), g) + 3, CaseTag::NegEps1LargeAgeB);
  return result(exact_half(g_p(2, alpha - 1, beta), g) + 3, CaseTag::NegEps1LargeAltB);
}

LowerBound eta_lower_bound(const GroupParams& params) {
  const Classification cls = classify(params);
  const int alpha = params.alpha(), beta = params.beta(), delta = params.delta();
  const bool equality = params.sign() == Sign::Negative && delta >= 2 && beta == delta &&
                        (beta == 3 || (beta >= 4 && alpha - beta == 2));
  // y^(p^beta) = x makes G cyclic; the bound is stated for groups with a
  // nontrivial covering and fails for C_{p^n}, n >= 4.
  const bool cyclic = params.sign() == Sign::Positive && params.epsilon() == alpha;
  return LowerBound{
      .n_minus_2 = static_cast<std::int64_t>(alpha) + beta - 2,
      .cyclic = cyclic,
      .bound_applies = !cls.maximal_class_family.has_value() && !cyclic,
      .equality_expected = equality,
  };
}

}  // namespace etameta
