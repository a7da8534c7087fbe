#include "lmmns/properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lmmns {
namespace {

void require_feasible(const Instance& inst, const Allocation& alloc, double tol) {
  require_valid(inst);
  const auto problems = allocation_violations(inst, alloc, std::max(tol, kFeasibilityTolerance));
  if (!problems.empty()) {
    throw std::invalid_argument("infeasible allocation: " + problems.front());
  }
}

bool at_cap(const Instance& inst, const Allocation& alloc, std::size_t i, double tol) {
  const double b = inst.bounds[i];
  if (std::isinf(b)) return false;
  return !(alloc.tasks[i] < b - tol * std::max(1.0, b));
}

bool saturated(const Allocation& alloc, std::size_t j, double tol) {
  return alloc.consumption[j] >= 1.0 - tol;
}

PropertyReport pass(const char* name, double tol) {
  PropertyReport report;
  report.property = name;
  report.tolerance = tol;
  return report;
}

PropertyReport fail(PropertyReport report, Witness witness) {
  report.holds = false;
  report.witness = std::move(witness);
  return report;
}

}  // namespace

PropertyReport check_pe(const Instance& inst, const Allocation& alloc, double tol) {
  require_feasible(inst, alloc, tol);
  PropertyReport report = pass("PE", tol);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    if (at_cap(inst, alloc, i, tol)) continue;
    bool blocked = false;
    double slack = kUnbounded;
    for (std::size_t j = 0; j < inst.n_resources; ++j) {
      if (inst.demand(i, j) <= 0.0) continue;
      blocked |= saturated(alloc, j, tol);
      slack = std::min(slack, 1.0 - alloc.consumption[j]);
    }
    if (!blocked) {
      std::ostringstream detail;
      detail << "user " << i << " can grow: every resource it uses has slack >= " << slack;
      return fail(std::move(report),
                  Witness{{i}, std::nullopt, alloc.tasks[i], inst.bounds[i], detail.str()});
    }
  }
  return report;
}

PropertyReport check_si(const Instance& inst, const Allocation& alloc, double tol) {
  require_feasible(inst, alloc, tol);
  PropertyReport report = pass("SI", tol);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    if (at_cap(inst, alloc, i, tol)) continue;
    double best_gap = -kUnbounded;
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < inst.n_resources; ++j) {
      const double gap = inst.demand(i, j) * alloc.tasks[i] - inst.weight(i, j);
      if (gap > best_gap) {
        best_gap = gap;
        best_j = j;
      }
    }
    if (best_gap < -tol) {
      std::ostringstream detail;
      detail << "user " << i << " gets " << inst.demand(i, best_j) * alloc.tasks[i]
             << " of resource " << best_j << ", entitled to " << inst.weight(i, best_j);
      return fail(std::move(report),
                  Witness{{i}, best_j, inst.demand(i, best_j) * alloc.tasks[i],
                          inst.weight(i, best_j), detail.str()});
    }
  }
  return report;
}

PropertyReport check_ef(const Instance& inst, const Allocation& alloc, double tol) {
  require_feasible(inst, alloc, tol);
  PropertyReport report = pass("EF", tol);
  const std::size_t m = inst.n_resources;
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    if (at_cap(inst, alloc, i, tol)) continue;
    for (std::size_t k = 0; k < inst.n_users; ++k) {
      if (k == i) continue;
      bool content = false;
      // Resource where i is furthest ahead of k, reported on failure.
      double best = -kUnbounded;
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < m; ++j) {
        const double own = inst.demand(i, j) * alloc.tasks[i] / inst.weight(i, j);
        const double other = inst.demand(k, j) * alloc.tasks[k] / inst.weight(k, j);
        if (own >= other - tol) content = true;
        if (own - other > best) {
          best = own - other;
          best_j = j;
        }
      }
      if (!content) {
        const double own = inst.demand(i, best_j) * alloc.tasks[i] / inst.weight(i, best_j);
        const double other = inst.demand(k, best_j) * alloc.tasks[k] / inst.weight(k, best_j);
        std::ostringstream detail;
        detail << "user " << i << " envies user " << k << ": weighted share below on every resource";
        return fail(std::move(report), Witness{{i, k}, best_j, own, other, detail.str()});
      }
    }
  }
  return report;
}

PropertyReport check_bbf(const Instance& inst, const Allocation& alloc, double tol) {
  require_feasible(inst, alloc, tol);
  PropertyReport report = pass("BBF", tol);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    if (at_cap(inst, alloc, i, tol)) continue;
    bool served = false;
    double best = -kUnbounded;
    std::optional<std::size_t> best_j;
    for (std::size_t j = 0; j < inst.n_resources; ++j) {
      if (!saturated(alloc, j, tol)) continue;
      const double got = inst.demand(i, j) * alloc.tasks[i];
      if (got >= inst.weight(i, j) - tol) served = true;
      if (got - inst.weight(i, j) > best) {
        best = got - inst.weight(i, j);
        best_j = j;
      }
    }
    if (!served) {
      std::ostringstream detail;
      Witness w{{i}, best_j, 0.0, 0.0, {}};
      if (best_j) {
        w.lhs = inst.demand(i, *best_j) * alloc.tasks[i];
        w.rhs = inst.weight(i, *best_j);
        detail << "user " << i << " is below its entitlement on every bottleneck";
      } else {
        w.lhs = alloc.tasks[i];
        w.rhs = inst.bounds[i];
        detail << "no bottleneck resource and user " << i << " is below its cap";
      }
      w.detail = detail.str();
      return fail(std::move(report), std::move(w));
    }
  }
  return report;
}

std::weak_ordering lexicographic_compare(const std::vector<double>& ns_a,
                                         const std::vector<double>& ns_b, double tol) {
  if (ns_a.size() != ns_b.size()) {
    throw std::invalid_argument("lexicographic_compare on vectors of different length");
  }
  std::vector<double> a = ns_a;
  std::vector<double> b = ns_b;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) <= tol) continue;
    return a[k] < b[k] ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  return std::weak_ordering::equivalent;
}

}  // namespace lmmns
