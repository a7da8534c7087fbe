#include "lmmns/lmmns.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core.hpp"
#include "lmmns/norms.hpp"

namespace lmmns {
namespace detail {

std::optional<double> min_ratio(std::span<const double> capacity, std::span<const double> mu,
                                std::size_t* argmin) {
  std::optional<double> best;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    // 0/0 means the resource is irrelevant to the dummy users.
    if (!(mu[k] > 0.0)) continue;
    const double ratio = std::max(capacity[k], 0.0) / mu[k];
    if (!best || ratio < *best) {
      best = ratio;
      if (argmin) *argmin = k;
    }
  }
  return best;
}

double tasks_at(const Instance& inst, const ShareProfile& profile, std::size_t user,
                double threshold) {
  if (threshold >= profile.ns_max[user]) return inst.bounds[user];
  return threshold / profile.norm_per_task[user];
}

PruneOutcome prune(const PruneInput& input, const SolverObserver* observer) {
  const Instance& inst = *input.inst;
  const ShareProfile& profile = *input.profile;
  const std::size_t m = input.resources.size();

  std::vector<std::size_t> undecided(input.users.begin(), input.users.end());
  std::vector<double> rc = input.capacity;
  std::vector<double> mu(m, 0.0);
  PruneOutcome out;

  std::vector<double> values;
  std::vector<double> load(m);
  std::vector<std::size_t> keep;
  while (!undecided.empty()) {
    values.resize(undecided.size());
    for (std::size_t u = 0; u < undecided.size(); ++u) values[u] = profile.ns_max[undecided[u]];
    const double trial = median_select(values, (values.size() + 1) / 2);

    // With an infinite trial threshold some uncapped user consumes without limit.
    bool feasible = !std::isinf(trial);
    if (feasible) {
      for (std::size_t k = 0; k < m; ++k) load[k] = trial * mu[k];
      for (std::size_t i : undecided) {
        const double ns_max = profile.ns_max[i];
        const auto r = inst.demands.row(i);
        if (ns_max < trial) {
          for (std::size_t k = 0; k < m; ++k) load[k] += r[input.resources[k]] * inst.bounds[i];
        } else {
          const double scale = trial / profile.norm_per_task[i];
          for (std::size_t k = 0; k < m; ++k) load[k] += r[input.resources[k]] * scale;
        }
      }
      for (std::size_t k = 0; k < m; ++k) {
        if (load[k] > rc[k]) {
          feasible = false;
          break;
        }
      }
    }

    keep.clear();
    if (feasible) {
      // Everyone capped at or below the trial threshold is capped in the optimum too.
      for (std::size_t i : undecided) {
        if (profile.ns_max[i] <= trial) {
          const auto r = inst.demands.row(i);
          for (std::size_t k = 0; k < m; ++k) rc[k] -= r[input.resources[k]] * inst.bounds[i];
          out.capped.push_back(i);
        } else {
          keep.push_back(i);
        }
      }
    } else {
      // Everyone at or above the trial threshold shares the final common level.
      for (std::size_t i : undecided) {
        if (profile.ns_max[i] >= trial) {
          const auto r = inst.demands.row(i);
          const double inv = 1.0 / profile.norm_per_task[i];
          for (std::size_t k = 0; k < m; ++k) mu[k] += r[input.resources[k]] * inv;
          out.dummy.push_back(i);
        } else {
          keep.push_back(i);
        }
      }
    }
    undecided.swap(keep);

    if (observer && *observer) {
      SolverState state;
      state.active_users = undecided;
      state.dummy_set = out.dummy;
      state.resolved = out.capped;
      state.remaining_capacity = rc;
      state.mu = mu;
      state.trial_threshold = trial;
      state.trial_feasible = feasible;
      (*observer)(state);
    }
  }

  if (out.dummy.empty()) {
    out.threshold = kUnbounded;
    return out;
  }
  std::size_t argmin = 0;
  const auto ratio = min_ratio(rc, mu, &argmin);
  if (!ratio) {
    out.unconstrained = true;
    out.threshold = kUnbounded;
    return out;
  }
  out.threshold = *ratio;
  out.binding = argmin;
  return out;
}

}  // namespace detail

std::optional<double> closed_form_ns(const Instance& inst, std::span<const std::size_t> dummy_set,
                                     std::span<const std::size_t> capped_set) {
  require_valid(inst);
  if (dummy_set.empty()) throw std::invalid_argument("closed_form_ns needs a nonempty dummy set");
  for (std::size_t i : dummy_set) {
    if (i >= inst.n_users) throw std::out_of_range("dummy user out of range");
    if (std::find(capped_set.begin(), capped_set.end(), i) != capped_set.end()) {
      throw std::invalid_argument("dummy and capped sets overlap");
    }
  }
  const ShareProfile profile = weighted_shares(inst);
  const std::size_t m = inst.n_resources;
  std::vector<double> numer(m, 1.0);
  std::vector<double> mu(m, 0.0);
  for (std::size_t i : capped_set) {
    if (i >= inst.n_users) throw std::out_of_range("capped user out of range");
    if (std::isinf(inst.bounds[i])) throw std::invalid_argument("capped user has no finite bound");
    for (std::size_t j = 0; j < m; ++j) numer[j] -= inst.demand(i, j) * inst.bounds[i];
  }
  for (std::size_t i : dummy_set) {
    for (std::size_t j = 0; j < m; ++j) mu[j] += inst.demand(i, j) / profile.norm_per_task[i];
  }
  // A numerator within 1e-12 of zero (or below) leaves no room.
  for (double& v : numer) {
    if (v < 1e-12) v = 0.0;
  }
  return detail::min_ratio(numer, mu);
}

Allocation solve_lmmns(const Instance& inst, const SolverObserver& observer) {
  require_valid(inst);
  if (inst.has_zero_demand()) {
    throw std::invalid_argument(
        "solve_lmmns needs strictly positive demands; use solve_lmmns_general");
  }
  const ShareProfile profile = weighted_shares(inst);
  std::vector<std::size_t> users(inst.n_users);
  std::vector<std::size_t> resources(inst.n_resources);
  for (std::size_t i = 0; i < users.size(); ++i) users[i] = i;
  for (std::size_t j = 0; j < resources.size(); ++j) resources[j] = j;

  detail::PruneInput input{&inst, &profile, users, resources,
                           std::vector<double>(inst.n_resources, 1.0)};
  const auto outcome = detail::prune(input, &observer);

  std::vector<double> tasks(inst.n_users);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    tasks[i] = detail::tasks_at(inst, profile, i, outcome.threshold);
  }
  return make_allocation(inst, std::move(tasks));
}

Allocation solve_lmmns_general(const Instance& inst) {
  require_valid(inst);
  const ShareProfile profile = weighted_shares(inst);
  const std::size_t n = inst.n_users;
  const std::size_t m = inst.n_resources;

  std::vector<double> tasks(n, 0.0);
  std::vector<double> fixed(m, 0.0);
  std::vector<std::size_t> active(n);
  std::vector<std::size_t> open(m);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  for (std::size_t j = 0; j < m; ++j) open[j] = j;

  // Each round saturates at least one resource or caps every active user.
  while (!active.empty()) {
    std::vector<double> capacity(open.size());
    for (std::size_t k = 0; k < open.size(); ++k) capacity[k] = 1.0 - fixed[open[k]];
    detail::PruneInput input{&inst, &profile, active, open, std::move(capacity)};
    const auto outcome = detail::prune(input, nullptr);
    if (outcome.unconstrained) {
      throw std::logic_error("active user without demand on any open resource");
    }
    const double threshold = outcome.threshold;

    std::vector<double> load(open.size(), 0.0);
    for (std::size_t i : active) {
      const double x = detail::tasks_at(inst, profile, i, threshold);
      for (std::size_t k = 0; k < open.size(); ++k) load[k] += inst.demand(i, open[k]) * x;
    }
    std::vector<bool> saturated(open.size(), false);
    for (std::size_t k = 0; k < open.size(); ++k) {
      saturated[k] = fixed[open[k]] + load[k] >= 1.0 - kFeasibilityTolerance;
    }
    if (outcome.binding) saturated[*outcome.binding] = true;

    std::vector<std::size_t> still_active;
    for (std::size_t i : active) {
      const double x = detail::tasks_at(inst, profile, i, threshold);
      bool frozen = profile.ns_max[i] <= threshold;
      for (std::size_t k = 0; k < open.size() && !frozen; ++k) {
        frozen = saturated[k] && inst.demand(i, open[k]) > 0.0;
      }
      if (frozen) {
        tasks[i] = x;
        for (std::size_t j = 0; j < m; ++j) fixed[j] += inst.demand(i, j) * x;
      } else {
        still_active.push_back(i);
      }
    }
    if (still_active.size() == active.size()) {
      throw std::logic_error("multi-round solver made no progress");
    }
    std::vector<std::size_t> still_open;
    for (std::size_t k = 0; k < open.size(); ++k) {
      if (!saturated[k]) still_open.push_back(open[k]);
    }
    active.swap(still_active);
    open.swap(still_open);
  }
  return make_allocation(inst, std::move(tasks));
}

}  // namespace lmmns
