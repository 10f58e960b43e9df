#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace etameta {

/// Caps for the end-to-end suite. Defaults are the full desk-scale run.
struct AcceptanceConfig {
  int p2_max_exp = 12;           // formula/oracle sweep for p = 2
  int p3_max_exp = 7;            // odd-prime sweeps, positive type
  int p5_max_exp = 5;
  int quotient_max_exp = 10;     // p = 2 quotient theorems
  int index_two_max_exp = 10;    // M = <x, y^2> orbit counts
  std::uint64_t conjugacy_max_order = 729;
  std::uint64_t direct_product_max_order = 1024;
  std::uint64_t exhaustive_axiom_max_order = 256;
  std::uint64_t axiom_samples = 10000;
  unsigned threads = 0;  // 0: default_thread_count()

  /// Full-size config with every cap clamped to 2^max_order_exp.
  static AcceptanceConfig scaled(int max_order_exp);
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::uint64_t cases = 0;
  std::string detail;  // first failure, or a short summary

  std::string line() const;  // "[PASS] 1 name: detail"
};

CriterionResult criterion_formula_oracle_p2(const AcceptanceConfig& config);
CriterionResult criterion_formula_oracle_odd(const AcceptanceConfig& config);
CriterionResult criterion_eta3_family(const AcceptanceConfig& config);
CriterionResult criterion_direct_products(const AcceptanceConfig& config);
CriterionResult criterion_main_bound(const AcceptanceConfig& config);
CriterionResult criterion_quotients(const AcceptanceConfig& config);
CriterionResult criterion_structure(const AcceptanceConfig& config);
CriterionResult criterion_conjugacy(const AcceptanceConfig& config);
CriterionResult criterion_index_two(const AcceptanceConfig& config);
CriterionResult criterion_engine_soundness(const AcceptanceConfig& config);

/// Runs every criterion in order; `on_result`, if set, sees each result as
/// soon as it is available.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceConfig& config,
    const std::function<void(const CriterionResult&)>& on_result = {});

}  // namespace etameta
