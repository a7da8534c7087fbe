#pragma once

// Median-pruning threshold search shared by solve_lmmns and the multi-round wrapper.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lmmns/lmmns.hpp"
#include "lmmns/model.hpp"
#include "lmmns/norms.hpp"

namespace lmmns::detail {

struct PruneInput {
  const Instance* inst = nullptr;
  const ShareProfile* profile = nullptr;
  std::span<const std::size_t> users;
  std::span<const std::size_t> resources;
  std::vector<double> capacity;  // residual capacity per entry of `resources`
};

struct PruneOutcome {
  /// Common normalized share of the dummy users; +inf when every user is capped
  /// or when no resource constrains the dummy users.
  double threshold = 0.0;
  bool unconstrained = false;
  std::optional<std::size_t> binding;  // index into `resources`
  std::vector<std::size_t> dummy;
  std::vector<std::size_t> capped;
};

PruneOutcome prune(const PruneInput& input, const SolverObserver* observer);

/// min_k capacity_k / mu_k over mu_k > 0, numerators clamped at 0.
std::optional<double> min_ratio(std::span<const double> capacity, std::span<const double> mu,
                                std::size_t* argmin = nullptr);

/// x_i for the threshold; users at their cap get exactly B_i.
double tasks_at(const Instance& inst, const ShareProfile& profile, std::size_t user,
                double threshold);

}  // namespace lmmns::detail
