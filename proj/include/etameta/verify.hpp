#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "etameta/engine.hpp"
#include "etameta/formulas.hpp"
#include "etameta/oracle.hpp"
#include "etameta/params.hpp"

namespace etameta {

inline constexpr std::uint64_t kSweepOracleBudget = std::uint64_t{1} << 12;
inline constexpr std::uint64_t kTargetedOracleBudget = std::uint64_t{1} << 14;

/// Formula value for one tuple, optionally checked against the oracle.
struct EtaReport {
  GroupParams params;
  std::uint64_t order = 0;
  std::uint64_t eta_formula = 0;
  CaseTag case_tag = CaseTag::Eta3Family;
  std::optional<std::uint64_t> eta_oracle;
  std::optional<bool> match;
  std::int64_t n_minus_2 = 0;
  bool bound_applies = false;
  bool bound_ok = false;
  bool equality_expected = false;
  std::optional<bool> equality_observed;
  /// Positive type with oracle: eta(G) = eta(G/G') measured on both sides.
  std::optional<bool> abelianization_match;

  /// False only when something that ran disagreed.
  bool ok() const noexcept {
    return match.value_or(true) && bound_ok && abelianization_match.value_or(true) &&
           (!equality_observed || *equality_observed == equality_expected || !bound_applies);
  }
};

struct VerifyOptions {
  bool run_oracle = true;
  std::uint64_t oracle_budget = kTargetedOracleBudget;
};

/// Above the oracle budget the oracle fields stay empty; nothing is thrown.
EtaReport verify_tuple(const GroupParams& params, const VerifyOptions& options = {});

struct SweepGrid {
  int p = 2;
  int max_order_exponent = 6;
  std::vector<Sign> signs{Sign::Positive, Sign::Negative};
  std::uint64_t oracle_budget = kSweepOracleBudget;
};

/// Valid tuples with alpha + beta <= max_order_exponent, ordered
/// lexicographically by (alpha, beta, epsilon, delta, sign) with + before -.
std::vector<GroupParams> grid_tuples(const SweepGrid& grid);

/// One report per grid tuple, in grid_tuples order regardless of thread count.
/// threads = 0 picks default_thread_count().
std::vector<EtaReport> sweep(const SweepGrid& grid, unsigned threads = 0);

/// ETA_META_THREADS if set to a positive integer, else hardware concurrency.
unsigned default_thread_count();

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle-level checks of the quotient, orbit-count and conjugacy statements
/// applicable to `params`. Failures are recorded, never thrown. Tuples above
/// `budget` yield a single failed "budget" entry.
std::vector<CheckResult> verify_theorems(const GroupParams& params,
                                         std::uint64_t budget = kTargetedOracleBudget);

/// cl(y^(pl+a) x^m) = g G' for a deterministic sample of (l, a, m), 1 <= a < p.
CheckResult conjugacy_coset_sample(const GroupParams& params, int samples = 16,
                                   std::uint64_t budget = kTargetedOracleBudget);

/// Positive type: cl(g) = g G' for every g outside the set of p-th powers.
CheckResult classes_outside_powers(const GroupParams& params,
                                   std::uint64_t budget = kTargetedOracleBudget);

/// M = <x, y^p>, the index-p subgroup containing <x>.
SubgroupElements index_p_subgroup(const std::shared_ptr<const MetacyclicView>& view);

struct AxiomReport {
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  bool ok() const noexcept { return failures == 0; }
};

/// Associativity over all triples plus identity and inverse laws, via a
/// Cayley table.
AxiomReport check_group_axioms_exhaustive(const FiniteGroupView& view);

/// Identity and inverse laws on every element, associativity on `samples`
/// random triples.
AxiomReport check_group_axioms_sampled(const FiniteGroupView& view, std::uint64_t samples,
                                       std::uint64_t seed);

/// Runs body(i) for i in [0, count) on up to `threads` workers. The first
/// exception thrown by any call is rethrown after all workers stop.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::jthread> pool;
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace etameta
