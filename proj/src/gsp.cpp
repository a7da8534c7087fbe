#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lmmns/errors.hpp"
#include "lmmns/properties.hpp"

namespace lmmns {
namespace {

double unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

std::vector<std::vector<std::size_t>> coalitions(std::size_t n, const ProbeConfig& config,
                                                 std::mt19937_64& gen) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back({i});
  for (std::size_t size = 2; size <= std::min(config.max_coalition, n); ++size) {
    for (std::size_t c = 0; c < config.coalitions_per_size; ++c) {
      std::vector<std::size_t> pool(n);
      for (std::size_t i = 0; i < n; ++i) pool[i] = i;
      // Partial Fisher-Yates for `size` distinct members.
      for (std::size_t k = 0; k < size; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(unit(gen) * (n - k));
        std::swap(pool[k], pool[std::min(pick, n - 1)]);
      }
      std::vector<std::size_t> members(pool.begin(), pool.begin() + size);
      std::sort(members.begin(), members.end());
      out.push_back(std::move(members));
    }
  }
  return out;
}

// Per member: m demand multipliers then one bound multiplier.
using Scenario = std::vector<std::vector<double>>;

Instance misreport(const Instance& truth, const std::vector<std::size_t>& members,
                   const Scenario& scenario) {
  Instance lie = truth;
  const std::size_t m = truth.n_resources;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const std::size_t i = members[c];
    for (std::size_t j = 0; j < m; ++j) {
      lie.demands(i, j) = std::min(1.0, truth.demand(i, j) * scenario[c][j]);
    }
    lie.bounds[i] = truth.bounds[i] * scenario[c][m];
  }
  return lie;
}

}  // namespace

double true_tasks(std::span<const double> true_demand, double true_bound,
                  std::span<const double> reported_demand, double reported_tasks) {
  if (true_demand.size() != reported_demand.size()) {
    throw std::invalid_argument("demand vectors differ in length");
  }
  double tasks = true_bound;
  for (std::size_t j = 0; j < true_demand.size(); ++j) {
    if (true_demand[j] <= 0.0) continue;
    tasks = std::min(tasks, reported_demand[j] * reported_tasks / true_demand[j]);
  }
  return tasks;
}

PropertyReport probe_gsp(const Instance& inst, const Mechanism& mechanism,
                         const ProbeConfig& config) {
  require_valid(inst);
  PropertyReport report;
  report.property = "GSP";
  report.tolerance = config.tolerance;

  const Allocation honest = mechanism(inst);
  if (mechanism(inst).tasks != honest.tasks) {
    throw std::logic_error("probe_gsp needs a deterministic mechanism");
  }

  const std::size_t m = inst.n_resources;
  std::mt19937_64 gen(config.seed);
  const auto groups = coalitions(inst.n_users, config, gen);

  for (const auto& members : groups) {
    std::vector<Scenario> scenarios;
    const Scenario identity(members.size(), std::vector<double>(m + 1, 1.0));
    for (double g : config.grid) {
      // One coordinate at a time (each demand, the bound), then all demands together.
      for (std::size_t coord = 0; coord <= m + 1; ++coord) {
        Scenario s = identity;
        for (auto& row : s) {
          if (coord < m + 1) {
            row[coord] = g;
          } else {
            std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m), g);
          }
        }
        scenarios.push_back(std::move(s));
      }
    }
    const double log_range = std::log(config.random_log_range);
    for (std::size_t r = 0; r < config.random_per_scenario; ++r) {
      Scenario s = identity;
      for (auto& row : s) {
        for (double& v : row) v = std::exp((2.0 * unit(gen) - 1.0) * log_range);
      }
      scenarios.push_back(std::move(s));
    }

    for (const auto& scenario : scenarios) {
      const Instance lie = misreport(inst, members, scenario);
      if (!validate(lie).ok()) continue;
      Allocation outcome;
      try {
        outcome = mechanism(lie);
      } catch (const InfeasibleError&) {
        continue;
      }
      ++report.scenarios;

      bool all_gain = true;
      double first_gain = 0.0;
      for (std::size_t c = 0; c < members.size() && all_gain; ++c) {
        const std::size_t i = members[c];
        const double got = true_tasks(inst.demands.row(i), inst.bounds[i], lie.demands.row(i),
                                      outcome.tasks[i]);
        const double base = honest.tasks[i];
        all_gain = got > base + config.tolerance * std::max(1.0, base);
        if (c == 0) first_gain = got;
      }
      if (!all_gain) continue;

      std::ostringstream detail;
      detail << "coalition {";
      for (std::size_t c = 0; c < members.size(); ++c) {
        detail << (c ? "," : "") << members[c];
      }
      detail << "} gains by reporting multipliers";
      for (std::size_t c = 0; c < members.size(); ++c) {
        detail << " [";
        for (std::size_t k = 0; k <= m; ++k) detail << (k ? "," : "") << scenario[c][k];
        detail << "]";
      }
      report.holds = false;
      report.witness = Witness{members, std::nullopt, first_gain, honest.tasks[members.front()],
                               detail.str()};
      return report;
    }
  }
  return report;
}

}  // namespace lmmns
