#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "lmmns/lmmns.hpp"
#include "lmmns/norms.hpp"

namespace lmmns {
namespace {

struct Round {
  const Instance& inst;
  const std::vector<double>& norm;      // ||ws_i||_p
  const std::vector<double>& ns_max;
  const std::vector<std::size_t>& users;
  const std::vector<std::size_t>& resources;
  const std::vector<double>& fixed;     // consumption of frozen users

  double tasks(std::size_t i, double level) const {
    if (level >= ns_max[i]) return inst.bounds[i];
    return level / norm[i];
  }

  std::vector<double> loads(double level) const {
    std::vector<double> out(resources.size());
    for (std::size_t k = 0; k < resources.size(); ++k) out[k] = fixed[resources[k]];
    for (std::size_t i : users) {
      const double x = tasks(i, level);
      for (std::size_t k = 0; k < resources.size(); ++k) {
        out[k] += inst.demand(i, resources[k]) * x;
      }
    }
    return out;
  }

  bool feasible(double level) const {
    for (double c : loads(level)) {
      if (c > 1.0) return false;
    }
    return true;
  }

  // Exact level for a fixed capped/free split, if that split is self-consistent.
  std::optional<double> refine(double split) const {
    std::vector<double> numer(resources.size());
    std::vector<double> denom(resources.size(), 0.0);
    for (std::size_t k = 0; k < resources.size(); ++k) numer[k] = 1.0 - fixed[resources[k]];
    for (std::size_t i : users) {
      const bool capped = ns_max[i] <= split;
      for (std::size_t k = 0; k < resources.size(); ++k) {
        const double r = inst.demand(i, resources[k]);
        if (capped) {
          numer[k] -= r * inst.bounds[i];
        } else {
          denom[k] += r / norm[i];
        }
      }
    }
    std::optional<double> level;
    for (std::size_t k = 0; k < resources.size(); ++k) {
      if (denom[k] <= 0.0) continue;
      const double v = std::max(numer[k], 0.0) / denom[k];
      if (!level || v < *level) level = v;
    }
    if (!level) return std::nullopt;
    for (std::size_t i : users) {
      const bool capped = ns_max[i] <= split;
      if (capped && ns_max[i] > *level * (1.0 + 1e-12)) return std::nullopt;
      if (!capped && ns_max[i] < *level * (1.0 - 1e-12)) return std::nullopt;
    }
    return level;
  }
};

}  // namespace

Allocation oracle_binary_search(const Instance& inst, double tol) {
  require_valid(inst);
  if (!(tol > 0.0)) throw std::invalid_argument("oracle tolerance must be positive");
  const std::size_t n = inst.n_users;
  const std::size_t m = inst.n_resources;

  std::vector<double> norm(n);
  std::vector<double> ns_max(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> ws(m);
    for (std::size_t j = 0; j < m; ++j) ws[j] = inst.demand(i, j) / inst.weight(i, j);
    norm[i] = p_norm(ws, inst.norm);
    ns_max[i] = norm[i] * inst.bounds[i];
  }

  std::vector<double> tasks(n, 0.0);
  std::vector<double> fixed(m, 0.0);
  std::vector<std::size_t> users(n);
  std::vector<std::size_t> resources(m);
  for (std::size_t i = 0; i < n; ++i) users[i] = i;
  for (std::size_t j = 0; j < m; ++j) resources[j] = j;

  while (!users.empty()) {
    const Round round{inst, norm, ns_max, users, resources, fixed};

    double top = 0.0;
    bool all_finite = true;
    for (std::size_t i : users) {
      if (std::isinf(ns_max[i])) {
        all_finite = false;
      } else {
        top = std::max(top, ns_max[i]);
      }
    }

    double level = 0.0;
    if (all_finite && round.feasible(top)) {
      level = top;
    } else {
      double lo = 0.0;
      double hi = 1.0;
      for (int guard = 0; round.feasible(hi); ++guard) {
        if (guard > 2000) throw std::logic_error("oracle threshold unbounded");
        lo = hi;
        hi *= 2.0;
      }
      while (hi - lo > tol) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (round.feasible(mid)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      level = lo;
      for (double split : {lo, hi}) {
        if (auto exact = round.refine(split); exact && *exact >= lo - tol && *exact <= hi + tol) {
          level = *exact;
          break;
        }
      }
    }

    const std::vector<double> load = round.loads(level);
    std::size_t tightest = 0;
    for (std::size_t k = 1; k < resources.size(); ++k) {
      if (load[k] > load[tightest]) tightest = k;
    }
    std::vector<bool> full(resources.size(), false);
    for (std::size_t k = 0; k < resources.size(); ++k) {
      full[k] = load[k] >= 1.0 - 1e-9;
    }
    bool any_full = std::find(full.begin(), full.end(), true) != full.end();

    std::vector<std::size_t> next;
    for (std::size_t i : users) {
      bool stop = ns_max[i] <= level;
      for (std::size_t k = 0; k < resources.size() && !stop; ++k) {
        stop = full[k] && inst.demand(i, resources[k]) > 0.0;
      }
      if (stop) {
        tasks[i] = round.tasks(i, level);
      } else {
        next.push_back(i);
      }
    }
    if (next.size() == users.size()) {
      // Bisection stopped just short of saturation; treat the tightest resource as full.
      if (any_full || resources.empty()) throw std::logic_error("oracle made no progress");
      full[tightest] = true;
      next.clear();
      for (std::size_t i : users) {
        if (inst.demand(i, resources[tightest]) > 0.0) {
          tasks[i] = round.tasks(i, level);
        } else {
          next.push_back(i);
        }
      }
    }
    std::vector<bool> still(n, false);
    for (std::size_t i : next) still[i] = true;
    for (std::size_t i : users) {
      if (still[i]) continue;
      for (std::size_t j = 0; j < m; ++j) fixed[j] += inst.demand(i, j) * tasks[i];
    }
    std::vector<std::size_t> open;
    for (std::size_t k = 0; k < resources.size(); ++k) {
      if (!full[k]) open.push_back(resources[k]);
    }
    users.swap(next);
    resources.swap(open);
  }
  return make_allocation(inst, std::move(tasks));
}

}  // namespace lmmns
