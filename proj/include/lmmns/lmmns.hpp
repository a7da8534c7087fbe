#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lmmns/model.hpp"

namespace lmmns {

/// Snapshot of the median-pruning solver after each pruning step.
struct SolverState {
  std::vector<std::size_t> active_users;  // undecided candidates
  std::vector<std::size_t> dummy_set;     // users pinned to the common threshold
  std::vector<std::size_t> resolved;      // users fixed at their cap
  std::vector<double> remaining_capacity;
  std::vector<double> mu;                 // sum over dummy users of r_ij / ||ws_i||_p
  double trial_threshold = 0.0;
  bool trial_feasible = false;
};

using SolverObserver = std::function<void(const SolverState&)>;

/// k-th smallest value (k is 1-based) by deterministic median-of-medians.
/// Throws std::out_of_range when k is outside [1, values.size()].
double median_select(std::span<const double> values, std::size_t k);

/// Largest common normalized share that the dummy users can reach once the capped
/// users run B_i tasks each: min_j (1 - sum_capped r_ij B_i) / mu_j, clamped at 0.
/// Resources with mu_j == 0 do not constrain the dummy users and are skipped.
/// Returns nullopt when no resource constrains them.
std::optional<double> closed_form_ns(const Instance& inst, std::span<const std::size_t> dummy_set,
                                     std::span<const std::size_t> capped_set);

/// Lexicographically max-min normalized-share allocation by median pruning.
/// Requires r_ij > 0 everywhere; zero entries throw std::invalid_argument
/// (use solve_lmmns_general). Result satisfies NS_i = min(NS_i^max, NS*).
Allocation solve_lmmns(const Instance& inst, const SolverObserver& observer = {});

/// Same mechanism for instances with zero demand entries: repeated median-pruning
/// rounds on the residual server, freezing users that touch a saturated resource.
/// Identical to solve_lmmns when all demands are positive.
Allocation solve_lmmns_general(const Instance& inst);

/// Independent reference solver: bisection on the common threshold with the
/// same freezing rounds, followed by an exact closed-form refinement.
Allocation oracle_binary_search(const Instance& inst, double tol = 1e-12);

}  // namespace lmmns
