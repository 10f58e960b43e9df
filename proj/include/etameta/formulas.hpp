#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "etameta/params.hpp"

namespace etameta {

/// Which closed-form case produced an eta value.
enum class CaseTag {
  Eta3Family,
  PositiveViaAbelianizationI,
  PositiveViaAbelianizationII,
  NegEps0Beta2,
  NegEps0Large,
  NegEps1Beta2,
  NegEps1Alpha2,
  NegEps1LargeAgeB,
  NegEps1LargeAltB,
  NegDeltaGe2Beta2,
  NegDeltaGe2,
};

inline constexpr CaseTag kAllCaseTags[] = {
    CaseTag::Eta3Family,       CaseTag::PositiveViaAbelianizationI,
    CaseTag::PositiveViaAbelianizationII, CaseTag::NegEps0Beta2,
    CaseTag::NegEps0Large,     CaseTag::NegEps1Beta2,
    CaseTag::NegEps1Alpha2,    CaseTag::NegEps1LargeAgeB,
    CaseTag::NegEps1LargeAltB, CaseTag::NegDeltaGe2Beta2,
    CaseTag::NegDeltaGe2,
};

std::string_view to_string(CaseTag tag) noexcept;
std::optional<CaseTag> parse_case_tag(std::string_view text) noexcept;

/// eta(C_{p^a} x C_{p^b}) = p^(l-1) ((k-l)(p-1) + p + 1), k = max, l = min.
/// Returns 1 when min(a, b) = 0 (the group is cyclic). Error(Overflow) if the
/// value does not fit in 63 bits.
std::uint64_t g_p(int p, int a, int b);

/// Exponents of G/G' for positive type, in the order the two cases produce them:
/// (alpha - delta, beta) or (alpha - epsilon, beta + epsilon - delta).
/// Error(NegativeTypeUnsupported) for negative type.
std::pair<int, int> abelianization_type(const GroupParams& params);

/// Parameters of G / <x^(p^(alpha-delta+1))>. Error(DeltaZeroUndefined) when
/// delta = 0; delta = 1 returns params unchanged.
GroupParams quotient_params(const GroupParams& params);

struct EtaFormulaResult {
  std::uint64_t eta = 0;
  CaseTag case_tag = CaseTag::Eta3Family;
  std::optional<std::pair<int, int>> abelianization;  // positive type only
};

/// Closed-form eta for every valid tuple.
EtaFormulaResult eta_formula(const GroupParams& params);

struct LowerBound {
  std::int64_t n_minus_2 = 0;     // alpha + beta - 2
  bool cyclic = false;            // positive type with epsilon = alpha: C_{p^n}, eta = 1
  bool bound_applies = false;     // false for dihedral, quaternion, semidihedral and cyclic
  bool equality_expected = false; // eta = n - 2 predicted
};

LowerBound eta_lower_bound(const GroupParams& params);

}  // namespace etameta
