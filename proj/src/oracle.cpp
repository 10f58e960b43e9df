#include "etameta/oracle.hpp"

#include <algorithm>
#include <numeric>

namespace etameta {

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

Element conj(const FiniteGroupView& view, Element g, Element h) {
  return view.multiply_unchecked(view.multiply_unchecked(view.inverse_unchecked(h), g), h);
}

Element commutator(const FiniteGroupView& view, Element g, Element h) {
  return view.multiply_unchecked(
      view.multiply_unchecked(view.inverse_unchecked(g), view.inverse_unchecked(h)),
      view.multiply_unchecked(g, h));
}

Element raise(const FiniteGroupView& view, Element g, std::uint64_t n) {
  Element result = view.identity();
  while (n > 0) {
    if (n & 1u) result = view.multiply_unchecked(result, g);
    n >>= 1u;
    if (n > 0) g = view.multiply_unchecked(g, g);
  }
  return result;
}

std::vector<Element> conjugators(const FiniteGroupView& view, ConjugationMode mode) {
  if (mode == ConjugationMode::Generators) return view.generators();
  std::vector<Element> all(view.order());
  std::iota(all.begin(), all.end(), Element{0});
  return all;
}

std::vector<bool> membership(std::uint64_t order, const ElementSet& set) {
  std::vector<bool> bits(order, false);
  for (Element g : set) bits[g] = true;
  return bits;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cyclic subgroups

CyclicSubgroupTable::CyclicSubgroupTable(const FiniteGroupView& view,
                                         std::span<const Element> enumeration_order) {
  const std::uint64_t n = view.order();
  const auto p = static_cast<std::uint64_t>(view.prime());
  id_of_.assign(n, kUnassigned);

  auto visit = [&](Element g) {
    if (id_of_[g] != kUnassigned) return;
    const std::size_t id = keys_.size();
    ElementSet powers{view.identity()};
    for (Element h = g; h != view.identity(); h = view.multiply_unchecked(h, g))
      powers.push_back(h);
    // The generators of <g> are exactly g^k with p not dividing k.
    for (std::size_t k = 1; k < powers.size(); ++k)
      if (k % p != 0) id_of_[powers[k]] = id;
    if (powers.size() == 1) id_of_[g] = id;
    std::sort(powers.begin(), powers.end());
    keys_.push_back(CyclicSubgroupKey{std::move(powers)});
    representatives_.push_back(g);
  };

  if (enumeration_order.empty()) {
    for (Element g = 0; g < n; ++g) visit(g);
  } else {
    if (enumeration_order.size() != n)
      throw Error(ErrorKind::Internal, "enumeration order is not a permutation of the view");
    for (Element g : enumeration_order) {
      if (!view.contains(g))
        throw Error(ErrorKind::ForeignHandle, "enumeration order handle out of range");
      visit(g);
    }
    if (std::find(id_of_.begin(), id_of_.end(), kUnassigned) != id_of_.end())
      throw Error(ErrorKind::Internal, "enumeration order is not a permutation of the view");
  }

  maximal_.assign(keys_.size(), true);
  for (std::size_t id = 0; id < keys_.size(); ++id) {
    if (keys_[id].size() == 1) continue;
    maximal_[id_of_[raise(view, representatives_[id], p)]] = false;
  }
}

std::vector<std::size_t> CyclicSubgroupTable::maximal_ids() const {
  std::vector<std::size_t> ids;
  for (std::size_t id = 0; id < keys_.size(); ++id)
    if (maximal_[id]) ids.push_back(id);
  return ids;
}

std::vector<CyclicSubgroupKey> cyclic_subgroups(const FiniteGroupView& view) {
  CyclicSubgroupTable table(view);
  std::vector<CyclicSubgroupKey> keys;
  for (std::size_t id = 0; id < table.count(); ++id) keys.push_back(table.key(id));
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<CyclicSubgroupKey> maximal_cyclic_subgroups(const FiniteGroupView& view) {
  CyclicSubgroupTable table(view);
  std::vector<CyclicSubgroupKey> keys;
  for (std::size_t id : table.maximal_ids()) keys.push_back(table.key(id));
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<CyclicSubgroupKey> maximal_cyclic_subgroups_generic(const FiniteGroupView& view) {
  const auto all = cyclic_subgroups(view);
  std::vector<CyclicSubgroupKey> maximal;
  for (const auto& c : all) {
    const bool covered = std::any_of(all.begin(), all.end(), [&](const CyclicSubgroupKey& d) {
      return d.size() > c.size() && std::includes(d.elements.begin(), d.elements.end(),
                                                  c.elements.begin(), c.elements.end());
    });
    if (!covered) maximal.push_back(c);
  }
  return maximal;
}

std::uint64_t eta(const FiniteGroupView& view, const EtaOptions& options) {
  CyclicSubgroupTable table(view, options.enumeration_order);
  DisjointSets orbits(table.count());
  const auto maximal = table.maximal_ids();
  const auto by = conjugators(view, options.mode);
  for (std::size_t id : maximal)
    for (Element h : by) orbits.unite(id, table.id_of(conj(view, table.representative(id), h)));
  std::uint64_t count = 0;
  for (std::size_t id : maximal)
    if (orbits.find(id) == id) ++count;
  return count;
}

std::uint64_t eta_star(const SubgroupElements& n) {
  if (!is_normal(n))
    throw Error(ErrorKind::NotNormal, "eta_star requires a normal subgroup");
  const FiniteGroupView& ambient = *n.ambient();
  const SubgroupView local(n);
  const CyclicSubgroupTable table(local);
  const auto maximal = table.maximal_ids();

  // N-conjugacy classes first, then the ambient action on those classes.
  DisjointSets classes(table.count());
  for (std::size_t id : maximal)
    for (Element h : local.generators())
      classes.unite(id, table.id_of(conj(local, table.representative(id), h)));
  for (std::size_t id : maximal) {
    const Element g = local.to_ambient(table.representative(id));
    for (Element h : ambient.generators())
      classes.unite(id, table.id_of(local.to_local(conj(ambient, g, h))));
  }
  std::uint64_t count = 0;
  for (std::size_t id : maximal)
    if (classes.find(id) == id) ++count;
  return count;
}

// ---------------------------------------------------------------------------
// Powers and conjugacy

ElementSet power_set(const FiniteGroupView& view, std::uint64_t k) {
  ElementSet out;
  out.reserve(view.order());
  for (Element g = 0; g < view.order(); ++g) out.push_back(raise(view, g, k));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElementSet pth_power_set(const FiniteGroupView& view, int p) {
  return power_set(view, static_cast<std::uint64_t>(p));
}

ElementSet conjugacy_class_of(const FiniteGroupView& view, Element g) {
  if (!view.contains(g)) throw Error(ErrorKind::ForeignHandle, "element not in view");
  ElementSet orbit{g};
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (Element h : view.generators()) {
      const Element c = conj(view, orbit[i], h);
      if (std::find(orbit.begin(), orbit.end(), c) == orbit.end()) orbit.push_back(c);
    }
  }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

std::vector<std::size_t> conjugacy_class_labels(const FiniteGroupView& view) {
  DisjointSets sets(view.order());
  for (Element g = 0; g < view.order(); ++g)
    for (Element h : view.generators()) sets.unite(g, conj(view, g, h));
  std::vector<std::size_t> labels(view.order());
  std::vector<std::size_t> dense(view.order(), kUnassigned);
  std::size_t next = 0;
  for (Element g = 0; g < view.order(); ++g) {
    const std::size_t root = sets.find(g);
    if (dense[root] == kUnassigned) dense[root] = next++;
    labels[g] = dense[root];
  }
  return labels;
}

ElementSet coset(const SubgroupElements& n, Element g) {
  const FiniteGroupView& view = *n.ambient();
  if (!view.contains(g)) throw Error(ErrorKind::ForeignHandle, "element not in view");
  ElementSet out;
  out.reserve(n.size());
  for (Element k : n.elements()) out.push_back(view.multiply_unchecked(g, k));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Structure

bool is_abelian(const FiniteGroupView& view) {
  const auto& gens = view.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (view.multiply_unchecked(gens[i], gens[j]) != view.multiply_unchecked(gens[j], gens[i]))
        return false;
  return true;
}

SubgroupElements derived_subgroup(const ViewPtr& view) {
  std::vector<Element> commutators;
  const auto& gens = view->generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      commutators.push_back(commutator(*view, gens[i], gens[j]));
  return normal_closure(view, commutators);
}

SubgroupElements derived_subgroup_exhaustive(const ViewPtr& view) {
  std::vector<bool> seen(view->order(), false);
  std::vector<Element> commutators;
  for (Element g = 0; g < view->order(); ++g) {
    for (Element h = 0; h < view->order(); ++h) {
      const Element c = commutator(*view, g, h);
      if (!seen[c]) {
        seen[c] = true;
        commutators.push_back(c);
      }
    }
  }
  return subgroup_closure(view, commutators);
}

SubgroupElements center(const ViewPtr& view) {
  ElementSet central;
  for (Element g = 0; g < view->order(); ++g) {
    const bool commutes = std::all_of(view->generators().begin(), view->generators().end(),
                                      [&](Element h) {
                                        return view->multiply_unchecked(g, h) ==
                                               view->multiply_unchecked(h, g);
                                      });
    if (commutes) central.push_back(g);
  }
  return SubgroupElements(view, std::move(central));
}

StructureReport structure(const ViewPtr& view) {
  const int p = view->prime();
  auto derived = derived_subgroup(view);
  auto centre = center(view);
  auto powers = pth_power_set(*view, p);
  auto power_subgroup = subgroup_closure(view, powers);

  bool powerful = false;
  if (p == 2) {
    const auto fourth = power_set(*view, 4);
    const auto fourth_subgroup = subgroup_closure(view, fourth);
    powerful = std::all_of(derived.elements().begin(), derived.elements().end(),
                           [&](Element g) { return fourth_subgroup.contains(g); });
  } else {
    powerful = std::all_of(derived.elements().begin(), derived.elements().end(),
                           [&](Element g) { return power_subgroup.contains(g); });
  }

  return StructureReport{
      .derived = std::move(derived),
      .center = std::move(centre),
      .pth_powers = std::move(powers),
      .pth_power_subgroup = std::move(power_subgroup),
      .is_powerful = powerful,
      .closed_form = std::nullopt,
  };
}

StructureReport structure(const std::shared_ptr<const MetacyclicView>& view,
                          const GroupParams& params) {
  if (view->params() != params)
    throw Error(ErrorKind::Internal, "structure: view does not realize " + params.to_string());
  StructureReport report = structure(std::static_pointer_cast<const FiniteGroupView>(view));
  const auto p = static_cast<std::int64_t>(params.p());
  const bool positive = params.sign() == Sign::Positive;
  auto pw = [p](int e) { return static_cast<std::int64_t>(*checked_pow(p, e)); };
  const ViewPtr generic = view;

  ClosedFormCheck check;
  if (positive) {
    const Element d = view->element(pw(params.alpha() - params.delta()), 0);
    check.derived_matches = report.derived == subgroup_closure(generic, std::vector{d});
    const std::vector<Element> z{view->element(pw(params.delta()), 0),
                                 view->element(0, pw(params.delta()))};
    check.center_matches = report.center == subgroup_closure(generic, z);
    check.center_order_matches =
        report.center.size() ==
        *checked_pow(params.p(), params.alpha() + params.beta() - 2 * params.delta());
    check.powerful_matches = report.is_powerful;
    check.powers_form_subgroup = report.pth_powers == report.pth_power_subgroup.elements();
  } else {
    check.derived_matches =
        report.derived == subgroup_closure(generic, std::vector{view->element(2, 0)});
    const std::vector<Element> z{view->element(pw(params.alpha() - 1), 0),
                                 view->element(0, pw(std::max(1, params.delta())))};
    check.center_matches = report.center == subgroup_closure(generic, z);
  }
  report.closed_form = check;
  return report;
}

std::pair<int, int> abelian_invariants(const FiniteGroupView& view) {
  if (!is_abelian(view))
    throw Error(ErrorKind::NotAbelian, view.describe() + " is not abelian");
  const auto p = static_cast<std::uint64_t>(view.prime());
  int log_order = 0;
  for (std::uint64_t n = view.order(); n > 1; n /= p) {
    if (n % p != 0) throw Error(ErrorKind::Internal, "view order is not a power of p");
    ++log_order;
  }
  std::uint64_t exponent = 1;
  std::uint64_t socle = 0;  // elements with g^p = 1
  for (Element g = 0; g < view.order(); ++g) {
    exponent = std::max(exponent, element_order(view, g));
    if (raise(view, g, p) == view.identity()) ++socle;
  }
  int a = 0;
  for (std::uint64_t e = exponent; e > 1; e /= p) ++a;
  const int b = log_order - a;
  const std::uint64_t expected_socle = (a > 0 ? p : 1) * (b > 0 ? p : 1);
  if (socle != expected_socle || b > a)
    throw Error(ErrorKind::RankExceeded,
                view.describe() + " is not a product of at most two cyclic groups");
  return {a, b};
}

QuotientEtaWitness quotient_eta_equality_witness(const SubgroupElements& n, int p) {
  const ViewPtr& view = n.ambient();
  if (!is_normal(n)) throw Error(ErrorKind::NotNormal, "witness requires a normal subgroup");

  QuotientEtaWitness w;
  const auto powers = membership(view->order(), pth_power_set(*view, p));

  w.kernel_in_pth_powers = true;
  for (Element k : n.elements()) {
    if (!powers[k]) {
      w.kernel_in_pth_powers = false;
      w.failing_element = k;
      break;
    }
  }

  // g n is conjugate to a generator of <g> iff <g n> is conjugate to <g>.
  const CyclicSubgroupTable table(*view);
  DisjointSets orbits(table.count());
  for (std::size_t id = 0; id < table.count(); ++id)
    for (Element h : view->generators())
      orbits.unite(id, table.id_of(conj(*view, table.representative(id), h)));

  w.cosets_conjugate = true;
  for (Element g = 0; g < view->order() && w.cosets_conjugate; ++g) {
    if (powers[g]) continue;
    const std::size_t target = orbits.find(table.id_of(g));
    for (Element k : n.elements()) {
      if (orbits.find(table.id_of(view->multiply_unchecked(g, k))) != target) {
        w.cosets_conjugate = false;
        if (!w.failing_element) w.failing_element = g;
        break;
      }
    }
  }

  w.criterion_holds = w.kernel_in_pth_powers && w.cosets_conjugate;
  w.eta_group = eta(*view);
  w.eta_quotient = eta(*quotient_view(n));
  w.consistent = w.criterion_holds == (w.eta_group == w.eta_quotient);
  return w;
}

}  // namespace etameta
