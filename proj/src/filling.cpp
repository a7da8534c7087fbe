#include "lmmns/filling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lmmns/errors.hpp"
#include "lmmns/norms.hpp"

namespace lmmns {
namespace {

enum class State { kPinned, kGrowing, kFrozen };

constexpr double kLevelSlack = 1e-12;

bool reached(double target, double level) { return target <= level * (1.0 + kLevelSlack); }

}  // namespace

const char* to_string(SaturationRule rule) {
  return rule == SaturationRule::kFreezeAll ? "freeze-all" : "freeze-touching";
}

SaturationRule parse_saturation(const std::string& text) {
  if (text == "freeze-all") return SaturationRule::kFreezeAll;
  if (text == "freeze-touching") return SaturationRule::kFreezeTouching;
  throw std::invalid_argument("unknown saturation rule '" + text + "'");
}

std::vector<double> sharing_incentive_floors(const Instance& inst) {
  require_valid(inst);
  const ShareProfile profile = weighted_shares(inst);
  std::vector<double> floors(inst.n_users);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    const std::size_t j = profile.dominant_resource[i];
    floors[i] = inst.weight(i, j) / inst.demand(i, j);
  }
  return floors;
}

FillResult fill(const Instance& inst, const FillOptions& options) {
  require_valid(inst);
  const std::size_t n = inst.n_users;
  const std::size_t m = inst.n_resources;
  const ShareProfile profile = weighted_shares(inst);
  const auto& norm = profile.norm_per_task;

  std::vector<double> floor_tasks(n, 0.0);
  if (options.apply_floors) {
    floor_tasks = sharing_incentive_floors(inst);
    for (std::size_t i = 0; i < n; ++i) {
      if (inst.bounds[i] < floor_tasks[i] * (1.0 - 1e-12)) {
        std::ostringstream msg;
        msg << "user " << i << " has cap " << inst.bounds[i] << " below its floor "
            << floor_tasks[i];
        throw InfeasibleError(msg.str());
      }
      floor_tasks[i] = std::min(floor_tasks[i], inst.bounds[i]);
    }
    for (std::size_t j = 0; j < m; ++j) {
      double used = 0.0;
      for (std::size_t i = 0; i < n; ++i) used += inst.demand(i, j) * floor_tasks[i];
      if (used > 1.0 + kFeasibilityTolerance) {
        std::ostringstream msg;
        msg << "floors use " << used << " of resource " << j;
        throw InfeasibleError(msg.str());
      }
    }
  }

  std::vector<double> lo(n);
  for (std::size_t i = 0; i < n; ++i) lo[i] = norm[i] * floor_tasks[i];
  const auto& hi = profile.ns_max;

  std::vector<State> state(n, State::kPinned);
  std::vector<FreezeReason> reasons(n, FreezeReason::kNone);
  std::vector<double> tasks = floor_tasks;
  std::vector<bool> open(m, true);

  double level = n == 0 ? 0.0 : *std::min_element(lo.begin(), lo.end());
  std::size_t events = 0;

  auto freeze = [&](std::size_t i, FreezeReason why, double at) {
    if (why == FreezeReason::kPinnedAtMin) {
      tasks[i] = floor_tasks[i];
    } else if (reached(hi[i], at)) {
      tasks[i] = inst.bounds[i];
    } else {
      tasks[i] = at / norm[i];
    }
    state[i] = State::kFrozen;
    reasons[i] = why;
  };

  std::vector<double> fixed(m);
  std::vector<double> growth(m);
  for (;;) {
    FillEvent event;
    event.level = level;

    // Joins, then caps, at the current level.
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] == State::kPinned && reached(lo[i], level)) {
        state[i] = State::kGrowing;
        ++event.joined;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (state[i] == State::kGrowing && reached(hi[i], level)) {
        freeze(i, FreezeReason::kHitMax, level);
        ++event.frozen;
      }
    }

    std::fill(fixed.begin(), fixed.end(), 0.0);
    std::fill(growth.begin(), growth.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = inst.demands.row(i);
      if (state[i] == State::kGrowing) {
        for (std::size_t j = 0; j < m; ++j) growth[j] += r[j] / norm[i];
      } else {
        for (std::size_t j = 0; j < m; ++j) fixed[j] += r[j] * tasks[i];
      }
    }

    // Saturation at the current level.
    for (std::size_t j = 0; j < m; ++j) {
      if (!open[j] || growth[j] <= 0.0) continue;
      const double ratio = std::max(1.0 - fixed[j], 0.0) / growth[j];
      if (reached(ratio, level)) event.saturated_resources.push_back(j);
    }
    bool done = false;
    if (!event.saturated_resources.empty()) {
      if (options.rule == SaturationRule::kFreezeAll) {
        for (std::size_t i = 0; i < n; ++i) {
          if (state[i] == State::kGrowing) {
            freeze(i, FreezeReason::kSaturated, level);
            ++event.frozen;
          } else if (state[i] == State::kPinned) {
            freeze(i, FreezeReason::kPinnedAtMin, level);
          }
        }
        done = true;
      } else {
        for (std::size_t j : event.saturated_resources) open[j] = false;
        for (std::size_t i = 0; i < n; ++i) {
          if (state[i] == State::kFrozen) continue;
          bool touches = false;
          for (std::size_t j : event.saturated_resources) touches |= inst.demand(i, j) > 0.0;
          if (!touches) continue;
          if (state[i] == State::kGrowing) {
            freeze(i, FreezeReason::kSaturated, level);
            ++event.frozen;
          } else {
            freeze(i, FreezeReason::kPinnedAtMin, level);
          }
        }
      }
    }

    const bool changed = event.joined > 0 || event.frozen > 0 || !event.saturated_resources.empty();
    if (changed) {
      ++events;
      if (options.observer) options.observer(event);
    }
    if (done) break;

    // Next event level; growth must be recomputed after any freeze above.
    std::fill(fixed.begin(), fixed.end(), 0.0);
    std::fill(growth.begin(), growth.end(), 0.0);
    bool any_growing = false;
    bool any_pinned = false;
    double next = kUnbounded;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = inst.demands.row(i);
      if (state[i] == State::kGrowing) {
        any_growing = true;
        next = std::min(next, hi[i]);
        for (std::size_t j = 0; j < m; ++j) growth[j] += r[j] / norm[i];
      } else {
        if (state[i] == State::kPinned) {
          any_pinned = true;
          next = std::min(next, lo[i]);
        }
        for (std::size_t j = 0; j < m; ++j) fixed[j] += r[j] * tasks[i];
      }
    }
    if (!any_growing && !any_pinned) break;
    for (std::size_t j = 0; j < m; ++j) {
      if (!open[j] || growth[j] <= 0.0) continue;
      next = std::min(next, std::max(1.0 - fixed[j], 0.0) / growth[j]);
    }
    if (std::isinf(next)) throw std::logic_error("filling level grows without bound");
    level = std::max(level, next);
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (state[i] == State::kGrowing) freeze(i, FreezeReason::kSaturated, level);
  }
  return FillResult{make_allocation(inst, std::move(tasks)), std::move(reasons), events};
}

Allocation solve_modified_lmmns(const Instance& inst, SaturationRule rule) {
  FillOptions options;
  options.rule = rule;
  options.apply_floors = true;
  return fill(inst, options).allocation;
}

Allocation solve_waterfilling(const Instance& inst, SaturationRule rule) {
  FillOptions options;
  options.rule = rule;
  options.apply_floors = false;
  return fill(inst, options).allocation;
}

}  // namespace lmmns
