#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lmmns/model.hpp"

namespace lmmns {

inline constexpr double kPropertyTolerance = 1e-7;

/// The violated inequality: users/resource involved and both sides.
struct Witness {
  std::vector<std::size_t> users;
  std::optional<std::size_t> resource;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  bool holds = true;
  std::optional<Witness> witness;  // present iff !holds
  double tolerance = kPropertyTolerance;
  std::size_t scenarios = 0;       // GSP probe only
};

/// Pareto efficiency: every user below its cap touches a saturated resource.
PropertyReport check_pe(const Instance& inst, const Allocation& alloc,
                        double tol = kPropertyTolerance);
/// Sharing incentive: x_i = B_i or r_ij x_i >= w_ij for some j.
PropertyReport check_si(const Instance& inst, const Allocation& alloc,
                        double tol = kPropertyTolerance);
/// Envy-freeness over all ordered pairs, users at their cap exempt as enviers.
PropertyReport check_ef(const Instance& inst, const Allocation& alloc,
                        double tol = kPropertyTolerance);
/// Bottleneck-based fairness: x_i = B_i or r_ij x_i >= w_ij on a saturated j.
PropertyReport check_bbf(const Instance& inst, const Allocation& alloc,
                         double tol = kPropertyTolerance);

/// Sorts both vectors ascending and compares lexicographically; entries within
/// tol are equal. Throws std::invalid_argument on a length mismatch.
std::weak_ordering lexicographic_compare(const std::vector<double>& ns_a,
                                         const std::vector<double>& ns_b, double tol = 1e-9);

using Mechanism = std::function<Allocation(const Instance&)>;

struct ProbeConfig {
  std::vector<double> grid{0.25, 0.5, 0.9, 1.1, 2.0, 4.0, 10.0};
  std::size_t random_per_scenario = 50;
  double random_log_range = 10.0;   // random multipliers drawn log-uniformly in [1/r, r]
  std::size_t max_coalition = 3;
  std::size_t coalitions_per_size = 4;  // sampled coalitions of each size >= 2
  std::uint64_t seed = 1;
  double tolerance = kPropertyTolerance;
};

/// Tasks a user can actually run with the bundle r_bar * x_bar, given its true
/// demand r and cap B: min(B, min_{j: r_j > 0} r_bar_j x_bar / r_j).
double true_tasks(std::span<const double> true_demand, double true_bound,
                  std::span<const double> reported_demand, double reported_tasks);

/// Randomized search for a coalition misreport (demands and/or caps) after which
/// every member runs strictly more true tasks. Falsification only: holds == true
/// means no profitable deviation was sampled. Throws std::logic_error if the
/// mechanism is not deterministic.
PropertyReport probe_gsp(const Instance& inst, const Mechanism& mechanism,
                         const ProbeConfig& config = {});

}  // namespace lmmns
