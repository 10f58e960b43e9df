#include "etameta/acceptance.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

#include "etameta/verify.hpp"

namespace etameta {

namespace {

std::uint64_t pow2(int e) { return std::uint64_t{1} << e; }

unsigned threads_for(const AcceptanceConfig& config) {
  return config.threads == 0 ? default_thread_count() : config.threads;
}

// Counts cases and keeps the first failure. Thread-safe.
class Tally {
 public:
  void pass() {
    std::lock_guard lock(mutex_);
    ++cases_;
  }

  void fail(const std::string& what) {
    std::lock_guard lock(mutex_);
    ++cases_;
    ++failures_;
    if (!first_) first_ = what;
  }

  void record(bool ok, const std::string& what) { ok ? pass() : fail(what); }

  CriterionResult result(int id, std::string name, std::string summary = {}) const {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.passed = failures_ == 0 && cases_ > 0;
    r.cases = cases_;
    if (failures_ > 0)
      r.detail = std::to_string(failures_) + " of " + std::to_string(cases_) +
                 " failed; first: " + *first_;
    else if (cases_ == 0)
      r.detail = "no cases ran";
    else
      r.detail = std::to_string(cases_) + " cases" + (summary.empty() ? "" : ", " + summary);
    return r;
  }

 private:
  std::mutex mutex_;
  std::uint64_t cases_ = 0;
  std::uint64_t failures_ = 0;
  std::optional<std::string> first_;
};

std::string describe_report(const EtaReport& r) {
  std::string s = r.params.to_string() + " formula=" + std::to_string(r.eta_formula) + " (" +
                  std::string(to_string(r.case_tag)) + ")";
  s += " oracle=" + (r.eta_oracle ? std::to_string(*r.eta_oracle) : std::string("-"));
  if (r.abelianization_match && !*r.abelianization_match) s += " eta(G/G') differs";
  return s;
}

std::vector<GroupParams> swept_tuples(const AcceptanceConfig& config) {
  auto tuples = grid_tuples({.p = 2, .max_order_exponent = config.p2_max_exp});
  for (auto [p, exp] : {std::pair{3, config.p3_max_exp}, std::pair{5, config.p5_max_exp}}) {
    const auto odd = grid_tuples({.p = p, .max_order_exponent = exp, .signs = {Sign::Positive}});
    tuples.insert(tuples.end(), odd.begin(), odd.end());
  }
  return tuples;
}

template <class Pred>
std::vector<GroupParams> filtered(std::vector<GroupParams> tuples, Pred pred) {
  std::erase_if(tuples, [&](const GroupParams& g) { return !pred(g); });
  return tuples;
}

bool starts_with(const std::string& s, std::string_view prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

// Runs verify_theorems on each tuple and records the checks whose name starts
// with one of `prefixes`.
void theorem_checks(const std::vector<GroupParams>& tuples,
                    std::initializer_list<std::string_view> prefixes, unsigned threads,
                    Tally& tally) {
  parallel_for(tuples.size(), threads, [&](std::size_t i) {
    for (const CheckResult& c : verify_theorems(tuples[i])) {
      const bool wanted = std::any_of(prefixes.begin(), prefixes.end(),
                                      [&](std::string_view p) { return starts_with(c.name, p); });
      if (wanted) tally.record(c.passed, tuples[i].to_string() + " " + c.name + ": " + c.detail);
    }
  });
}

}  // namespace

AcceptanceConfig AcceptanceConfig::scaled(int max_order_exp) {
  AcceptanceConfig c;
  const int e = std::clamp(max_order_exp, 1, 62);
  const std::uint64_t cap = pow2(e);
  auto largest_exponent = [cap](int p, int limit) {
    int k = 0;
    while (k < limit && *checked_pow(p, k + 1) <= cap) ++k;
    return k;
  };
  c.p2_max_exp = std::min(c.p2_max_exp, e);
  c.p3_max_exp = largest_exponent(3, c.p3_max_exp);
  c.p5_max_exp = largest_exponent(5, c.p5_max_exp);
  c.quotient_max_exp = std::min(c.quotient_max_exp, e);
  c.index_two_max_exp = std::min(c.index_two_max_exp, e);
  c.conjugacy_max_order = std::min(c.conjugacy_max_order, cap);
  c.direct_product_max_order = std::min(c.direct_product_max_order, cap);
  c.exhaustive_axiom_max_order = std::min(c.exhaustive_axiom_max_order, cap);
  return c;
}

std::string CriterionResult::line() const {
  return std::string(passed ? "[PASS] " : "[FAIL] ") + std::to_string(id) + " " + name + ": " +
         detail;
}

CriterionResult criterion_formula_oracle_p2(const AcceptanceConfig& config) {
  Tally tally;
  const auto reports = sweep({.p = 2, .max_order_exponent = config.p2_max_exp,
                              .oracle_budget = kSweepOracleBudget},
                             threads_for(config));
  std::vector<bool> seen_tag(std::size(kAllCaseTags), false);
  for (const auto& r : reports) {
    tally.record(r.eta_oracle.has_value() && r.match == true, describe_report(r));
    for (std::size_t t = 0; t < std::size(kAllCaseTags); ++t)
      if (kAllCaseTags[t] == r.case_tag) seen_tag[t] = true;
  }
  const auto tags = std::count(seen_tag.begin(), seen_tag.end(), true);
  return tally.result(1, "formula = oracle, p = 2, order <= 2^" + std::to_string(config.p2_max_exp),
                      std::to_string(tags) + "/" + std::to_string(seen_tag.size()) +
                          " case tags exercised");
}

CriterionResult criterion_formula_oracle_odd(const AcceptanceConfig& config) {
  Tally tally;
  for (auto [p, exp] : {std::pair{3, config.p3_max_exp}, std::pair{5, config.p5_max_exp}}) {
    const auto reports = sweep({.p = p, .max_order_exponent = exp, .signs = {Sign::Positive},
                                .oracle_budget = kSweepOracleBudget},
                               threads_for(config));
    for (const auto& r : reports)
      tally.record(r.eta_oracle.has_value() && r.match == true && r.abelianization_match == true,
                   describe_report(r));
  }
  return tally.result(2, "formula = oracle and eta(G) = eta(G/G'), p = 3 (3^" +
                             std::to_string(config.p3_max_exp) + "), p = 5 (5^" +
                             std::to_string(config.p5_max_exp) + ")");
}

CriterionResult criterion_eta3_family(const AcceptanceConfig& config) {
  Tally tally;
  std::vector<GroupParams> family;
  for (int alpha = 2; alpha + 1 <= config.p2_max_exp; ++alpha) {
    family.push_back(validate(2, alpha, 1, 0, 0, Sign::Negative));  // dihedral
    family.push_back(validate(2, alpha, 1, 1, 0, Sign::Negative));  // generalized quaternion
    if (alpha >= 3) family.push_back(validate(2, alpha, 1, 0, 1, Sign::Negative));  // semidihedral
  }
  parallel_for(family.size(), threads_for(config), [&](std::size_t i) {
    const auto view = make_metacyclic(family[i], kSweepOracleBudget);
    const std::uint64_t measured = eta(*view);
    tally.record(measured == 3 && eta_formula(family[i]).eta == 3 &&
                     classify(family[i]).maximal_class_family.has_value(),
                 family[i].to_string() + " eta=" + std::to_string(measured));
  });
  return tally.result(3, "eta = 3 for dihedral, quaternion, semidihedral");
}

CriterionResult criterion_direct_products(const AcceptanceConfig& config) {
  Tally tally;
  for (int p : {2, 3, 5}) {
    for (int a = 0;; ++a) {
      if (*checked_pow(p, a) > config.direct_product_max_order) break;
      for (int b = 0; *checked_pow(p, a + b) <= config.direct_product_max_order; ++b) {
        const auto view = make_direct_product(p, a, b, config.direct_product_max_order);
        const std::uint64_t measured = eta(*view);
        const std::uint64_t expected = g_p(p, a, b);
        tally.record(measured == expected, view->describe() + " oracle=" +
                                               std::to_string(measured) +
                                               " g_p=" + std::to_string(expected));
      }
    }
  }
  return tally.result(4, "eta(C_p^a x C_p^b) = g_p(a, b)");
}

CriterionResult criterion_main_bound(const AcceptanceConfig& config) {
  Tally tally;
  std::uint64_t equalities = 0, cyclic = 0;
  for (const GroupParams& g : swept_tuples(config)) {
    const LowerBound bound = eta_lower_bound(g);
    if (bound.cyclic) {
      ++cyclic;
      tally.record(eta_formula(g).eta == 1, g.to_string() + " cyclic but eta != 1");
      continue;
    }
    if (!bound.bound_applies) continue;
    const auto value = static_cast<std::int64_t>(eta_formula(g).eta);
    const bool equal = value == bound.n_minus_2;
    if (equal) ++equalities;
    tally.record(value >= bound.n_minus_2 && equal == bound.equality_expected,
                 g.to_string() + " eta=" + std::to_string(value) +
                     " n-2=" + std::to_string(bound.n_minus_2) +
                     " equality_expected=" + (bound.equality_expected ? "true" : "false"));
  }
  // Spot values, confirmed by the oracle.
  for (auto [params, expected] : {std::pair{validate(2, 5, 3, 0, 3, Sign::Negative), 6},
                                  std::pair{validate(2, 6, 4, 0, 4, Sign::Negative), 8}}) {
    const EtaReport r = verify_tuple(params, {.run_oracle = true,
                                              .oracle_budget = kTargetedOracleBudget});
    const auto e = static_cast<std::uint64_t>(expected);
    tally.record(r.eta_formula == e && r.eta_oracle == e && r.equality_expected &&
                     r.equality_observed == true,
                 "spot " + describe_report(r) + " expected " + std::to_string(expected));
  }
  return tally.result(5, "eta >= n - 2 with equality exactly where predicted",
                      std::to_string(equalities) + " equality tuples, " +
                          std::to_string(cyclic) + " cyclic tuples held to eta = 1 instead");
}

CriterionResult criterion_quotients(const AcceptanceConfig& config) {
  Tally tally;
  const auto tuples = grid_tuples({.p = 2, .max_order_exponent = config.quotient_max_exp});
  theorem_checks(tuples,
                 {"quotient_monotone", "negative_quotient_equality", "quotient_params_shape",
                  "quotient_params_formula"},
                 threads_for(config), tally);
  return tally.result(6, "quotient theorems, p = 2, order <= 2^" +
                             std::to_string(config.quotient_max_exp));
}

CriterionResult criterion_structure(const AcceptanceConfig& config) {
  Tally tally;
  const auto tuples = swept_tuples(config);
  parallel_for(tuples.size(), threads_for(config), [&](std::size_t i) {
    const auto view = make_metacyclic(tuples[i], kSweepOracleBudget);
    const StructureReport report = structure(view, tuples[i]);
    const ClosedFormCheck& c = *report.closed_form;
    std::string what = tuples[i].to_string();
    if (!c.derived_matches) what += " derived";
    if (!c.center_matches) what += " center";
    if (!c.center_order_matches) what += " |Z|";
    if (!c.powerful_matches) what += " powerful";
    if (!c.powers_form_subgroup) what += " G^p != G^{p}";
    tally.record(c.all(), what);
  });
  return tally.result(7, "derived subgroup, center, powerful flag match closed forms");
}

CriterionResult criterion_conjugacy(const AcceptanceConfig& config) {
  Tally tally;
  const auto tuples = swept_tuples(config);
  const auto positive_small = filtered(tuples, [&](const GroupParams& g) {
    return g.sign() == Sign::Positive && group_order(g) <= config.conjugacy_max_order;
  });
  parallel_for(positive_small.size(), threads_for(config), [&](std::size_t i) {
    const CheckResult c = classes_outside_powers(positive_small[i]);
    tally.record(c.passed, positive_small[i].to_string() + " " + c.detail);
  });
  parallel_for(tuples.size(), threads_for(config), [&](std::size_t i) {
    const CheckResult c = conjugacy_coset_sample(tuples[i]);
    tally.record(c.passed, tuples[i].to_string() + " " + c.name + ": " + c.detail);
  });
  return tally.result(8, "cl(g) = gG' outside p-th powers and for y^(pl+a)x^m");
}

CriterionResult criterion_index_two(const AcceptanceConfig& config) {
  Tally tally;
  const auto tuples =
      filtered(grid_tuples({.p = 2, .max_order_exponent = config.index_two_max_exp,
                            .signs = {Sign::Negative}}),
               [](const GroupParams& g) { return g.delta() <= 1 && g.beta() >= 2; });
  theorem_checks(tuples, {"index_two_"}, threads_for(config), tally);
  const auto coinciding = std::count_if(tuples.begin(), tuples.end(), [](const GroupParams& g) {
    return g.epsilon() == 1 && g.delta() == 1;
  });
  return tally.result(9, "eta(G) = eta*(M) + [delta = 0] for M = <x, y^2>",
                      std::to_string(coinciding) +
                          " tuples with epsilon = delta = 1 checked as eta*(M) + 1");
}

CriterionResult criterion_engine_soundness(const AcceptanceConfig& config) {
  Tally tally;
  std::vector<ViewPtr> small, large;
  auto add = [&](ViewPtr view) {
    (view->order() <= config.exhaustive_axiom_max_order ? small : large).push_back(std::move(view));
  };
  for (const GroupParams& g : swept_tuples(config)) {
    const auto view = make_metacyclic(g, kSweepOracleBudget);
    add(view);
    if (view->order() <= config.exhaustive_axiom_max_order) {
      // Quotients and subgroups built from small groups are checked too.
      add(quotient_view(subgroup_closure(view, std::vector{view->element(g.p(), 0)})));
      add(subgroup_view(index_p_subgroup(view)));
    }
  }
  for (int p : {2, 3, 5})
    for (int a = 0; *checked_pow(p, a) <= config.exhaustive_axiom_max_order; ++a)
      for (int b = 0; *checked_pow(p, a + b) <= config.exhaustive_axiom_max_order; ++b)
        add(make_direct_product(p, a, b));

  parallel_for(small.size(), threads_for(config), [&](std::size_t i) {
    const AxiomReport r = check_group_axioms_exhaustive(*small[i]);
    tally.record(r.ok(), r.first_failure);
  });
  parallel_for(large.size(), threads_for(config), [&](std::size_t i) {
    const AxiomReport r = check_group_axioms_sampled(*large[i], config.axiom_samples, 1000 + i);
    tally.record(r.ok(), r.first_failure);
  });
  return tally.result(10, "group axioms: exhaustive to order " +
                              std::to_string(config.exhaustive_axiom_max_order) + ", sampled above",
                      std::to_string(small.size()) + " exhaustive, " +
                          std::to_string(large.size()) + " sampled");
}

std::vector<CriterionResult> run_acceptance(
    const AcceptanceConfig& config, const std::function<void(const CriterionResult&)>& on_result) {
  using Criterion = CriterionResult (*)(const AcceptanceConfig&);
  constexpr Criterion kCriteria[] = {
      criterion_formula_oracle_p2, criterion_formula_oracle_odd, criterion_eta3_family,
      criterion_direct_products,   criterion_main_bound,         criterion_quotients,
      criterion_structure,         criterion_conjugacy,          criterion_index_two,
      criterion_engine_soundness,
  };
  std::vector<CriterionResult> results;
  for (Criterion run : kCriteria) {
    CriterionResult r;
    try {
      r = run(config);
    } catch (const std::exception& e) {
      r.id = static_cast<int>(results.size()) + 1;
      r.name = "criterion";
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace etameta
