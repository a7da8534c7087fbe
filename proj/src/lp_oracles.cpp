#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lmmns/errors.hpp"
#include "lmmns/lp.hpp"
#include "lmmns/norms.hpp"

namespace lmmns {
namespace {

// Per-user lower bound on x_i: the sharing-incentive floor 1/(n r_{i j_i}) or 0.
std::vector<double> task_floors(const Instance& inst, bool require_si) {
  std::vector<double> floors(inst.n_users, 0.0);
  if (!require_si) return floors;
  if (!inst.equal_weights(1e-9)) {
    throw std::invalid_argument("sharing-incentive oracle needs equal weights");
  }
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    double top = 0.0;
    for (std::size_t j = 0; j < inst.n_resources; ++j) top = std::max(top, inst.demand(i, j));
    floors[i] = 1.0 / (static_cast<double>(inst.n_users) * top);
    if (floors[i] > inst.bounds[i] * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "user " << i << " cap " << inst.bounds[i] << " is below its floor " << floors[i];
      throw InfeasibleError(msg.str());
    }
    floors[i] = std::min(floors[i], inst.bounds[i]);
  }
  return floors;
}

OracleResult finish(const Instance& inst, LinearProgram lp, std::size_t task_vars) {
  LpSolution sol = simplex_solve(lp);
  if (sol.status == LpStatus::kInfeasible) throw InfeasibleError("oracle LP is infeasible");
  if (sol.status == LpStatus::kUnbounded) throw std::logic_error("oracle LP is unbounded");
  std::vector<double> tasks(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(task_vars));
  for (std::size_t i = 0; i < task_vars; ++i) {
    tasks[i] = std::clamp(tasks[i], lp.lower[i], lp.upper[i]);
  }
  OracleResult out;
  out.allocation = make_allocation(inst, std::move(tasks));
  out.objective = sol.value;
  out.certificate = certify(lp, sol);
  out.lp = std::move(sol);
  return out;
}

}  // namespace

LinearProgram build_welfare_lp(const Instance& inst, bool require_si) {
  require_valid(inst);
  const std::size_t n = inst.n_users;
  const std::size_t m = inst.n_resources;
  LinearProgram lp;
  lp.objective.assign(n, 1.0);
  lp.constraints = Matrix(m, n);
  lp.rhs.assign(m, 1.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < n; ++i) lp.constraints(j, i) = inst.demand(i, j);
  }
  lp.lower = task_floors(inst, require_si);
  lp.upper = inst.bounds;
  return lp;
}

LinearProgram build_utilization_lp(const Instance& inst, bool require_si) {
  require_valid(inst);
  const std::size_t n = inst.n_users;
  const std::size_t m = inst.n_resources;
  LinearProgram lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  lp.constraints = Matrix(2 * m, n + 1);
  lp.rhs.assign(2 * m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    lp.rhs[j] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      lp.constraints(j, i) = inst.demand(i, j);
      lp.constraints(m + j, i) = -inst.demand(i, j);
    }
    lp.constraints(m + j, n) = 1.0;
  }
  lp.lower = task_floors(inst, require_si);
  lp.lower.push_back(0.0);
  lp.upper = inst.bounds;
  lp.upper.push_back(kUnbounded);
  return lp;
}

OracleResult welfare_lp(const Instance& inst, bool require_si) {
  return finish(inst, build_welfare_lp(inst, require_si), inst.n_users);
}

OracleResult utilization_lp(const Instance& inst, bool require_si) {
  return finish(inst, build_utilization_lp(inst, require_si), inst.n_users);
}

}  // namespace lmmns
