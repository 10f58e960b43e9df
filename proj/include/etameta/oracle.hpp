#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "etameta/engine.hpp"

namespace etameta {

/// Identity of a cyclic subgroup: the sorted handles of its elements.
struct CyclicSubgroupKey {
  ElementSet elements;

  std::uint64_t size() const noexcept { return elements.size(); }
  friend auto operator<=>(const CyclicSubgroupKey&, const CyclicSubgroupKey&) = default;
};

/// Every cyclic subgroup of a view, with the covering relation of the chain
/// <h> > <h^p> > ... needed for maximality.
class CyclicSubgroupTable {
 public:
  /// `enumeration_order`, when non-empty, is a permutation of the handles and
  /// fixes which element is met first (and so becomes the representative).
  explicit CyclicSubgroupTable(const FiniteGroupView& view,
                               std::span<const Element> enumeration_order = {});

  std::size_t count() const noexcept { return keys_.size(); }
  const CyclicSubgroupKey& key(std::size_t id) const { return keys_.at(id); }
  /// A generator of subgroup `id`.
  Element representative(std::size_t id) const { return representatives_.at(id); }
  /// Id of <g>.
  std::size_t id_of(Element g) const { return id_of_.at(g); }
  bool is_maximal(std::size_t id) const { return maximal_.at(id); }
  std::vector<std::size_t> maximal_ids() const;

 private:
  std::vector<CyclicSubgroupKey> keys_;
  std::vector<Element> representatives_;
  std::vector<std::size_t> id_of_;
  std::vector<bool> maximal_;
};

std::vector<CyclicSubgroupKey> cyclic_subgroups(const FiniteGroupView& view);

/// Maximal cyclic subgroups via the p-group chain shortcut: every proper
/// subgroup of <h> lies inside <h^p>.
std::vector<CyclicSubgroupKey> maximal_cyclic_subgroups(const FiniteGroupView& view);

/// All-pairs containment over the cyclic subgroups; no p-group assumption.
/// Quadratic, used to cross-check the chain shortcut.
std::vector<CyclicSubgroupKey> maximal_cyclic_subgroups_generic(const FiniteGroupView& view);

enum class ConjugationMode {
  Generators,   // close orbits under the view's generators
  AllElements,  // conjugate by every element
};

struct EtaOptions {
  ConjugationMode mode = ConjugationMode::Generators;
  std::span<const Element> enumeration_order = {};
};

/// Number of conjugacy classes of maximal cyclic subgroups.
std::uint64_t eta(const FiniteGroupView& view, const EtaOptions& options = {});

/// Number of G-orbits on the N-conjugacy classes of maximal cyclic subgroups
/// of N, where N is taken as a group in its own right. Error(NotNormal).
std::uint64_t eta_star(const SubgroupElements& n);

/// { g^p : g in G }
ElementSet pth_power_set(const FiniteGroupView& view, int p);
/// { g^k : g in G } for an arbitrary exponent k.
ElementSet power_set(const FiniteGroupView& view, std::uint64_t k);

/// Orbit of g under conjugation.
ElementSet conjugacy_class_of(const FiniteGroupView& view, Element g);

/// Label per element: equal labels iff conjugate. Labels are dense, in order
/// of first appearance.
std::vector<std::size_t> conjugacy_class_labels(const FiniteGroupView& view);

/// The coset gN as a sorted set.
ElementSet coset(const SubgroupElements& n, Element g);

struct ClosedFormCheck {
  bool derived_matches = false;
  bool center_matches = false;
  bool center_order_matches = true;  // |Z(G)| = p^(alpha+beta-2delta); positive type only
  bool powerful_matches = true;      // positive type must be powerful
  bool powers_form_subgroup = true;  // G^p = G^{p} as sets; positive type only

  bool all() const noexcept {
    return derived_matches && center_matches && center_order_matches && powerful_matches &&
           powers_form_subgroup;
  }
};

struct StructureReport {
  SubgroupElements derived;
  SubgroupElements center;
  ElementSet pth_powers;
  SubgroupElements pth_power_subgroup;
  bool is_powerful = false;
  std::optional<ClosedFormCheck> closed_form;  // set when params were supplied
};

/// G' (normal closure of commutators of generators), Z(G), G^{p}, G^p and the
/// powerful flag (G' <= G^p for odd p, G' <= G^4 for p = 2).
StructureReport structure(const ViewPtr& view);

/// As above, and compares the brute-force subgroups with the presentation's
/// closed forms. `view` must realize `params`.
StructureReport structure(const std::shared_ptr<const MetacyclicView>& view,
                          const GroupParams& params);

/// Subgroup generated by all commutators [g, h], g, h in G. Quadratic; used to
/// cross-check the generator-based derived subgroup.
SubgroupElements derived_subgroup_exhaustive(const ViewPtr& view);
SubgroupElements derived_subgroup(const ViewPtr& view);
SubgroupElements center(const ViewPtr& view);

bool is_abelian(const FiniteGroupView& view);

/// (a, b), a >= b, with view isomorphic to C_{p^a} x C_{p^b}.
/// Error(NotAbelian), Error(RankExceeded).
std::pair<int, int> abelian_invariants(const FiniteGroupView& view);

struct QuotientEtaWitness {
  bool criterion_holds = false;       // both clauses below
  bool kernel_in_pth_powers = false;  // N is contained in G^{p}
  bool cosets_conjugate = false;      // every element of gN conjugate to a generator of <g>
  std::optional<Element> failing_element;  // g outside G^{p} whose coset breaks clause two,
                                           // or an element of N outside G^{p}
  std::uint64_t eta_group = 0;
  std::uint64_t eta_quotient = 0;
  /// criterion_holds == (eta_group == eta_quotient)
  bool consistent = false;
};

/// Checks the criterion for eta(G/N) = eta(G) directly and measures both sides.
QuotientEtaWitness quotient_eta_equality_witness(const SubgroupElements& n, int p);

}  // namespace etameta
