#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lmmns/model.hpp"

namespace lmmns {

/// maximize c.x  s.t.  A x <= b,  lower <= x <= upper (lower finite).
struct LinearProgram {
  std::vector<double> objective;
  Matrix constraints;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t variables() const noexcept { return objective.size(); }
  std::size_t rows() const noexcept { return rhs.size(); }
  /// Throws std::invalid_argument on inconsistent dimensions or bounds.
  void check() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> duals;  // one per row, >= 0 at optimality
  std::size_t iterations = 0;
};

/// Dense bounded-variable primal simplex, two phases, Bland's rule.
LpSolution simplex_solve(const LinearProgram& lp);

/// Optimality certificate recomputed from the LP data alone.
struct Certificate {
  double primal_residual = 0.0;      // worst violated row or bound
  double dual_infeasibility = 0.0;   // negative duals or wrong-signed reduced costs
  double complementarity = 0.0;      // worst |y_r * slack_r| and |d_j * gap_j|
  double duality_gap = 0.0;          // |c.x - dual objective|
  bool ok = false;
};

Certificate certify(const LinearProgram& lp, const LpSolution& solution,
                    double primal_tol = 1e-8, double gap_tol = 1e-6);

struct OracleResult {
  Allocation allocation;
  double objective = 0.0;
  LpSolution lp;
  Certificate certificate;
};

/// max sum_i x_i subject to capacity and caps; with require_si also
/// r_{i j_i} x_i >= 1/n (equal weights only, else std::invalid_argument).
/// Throws InfeasibleError when the sharing-incentive rows cannot be met.
OracleResult welfare_lp(const Instance& inst, bool require_si);

/// max c subject to c <= sum_i r_ij x_i <= 1 for all j, caps, optional SI rows.
OracleResult utilization_lp(const Instance& inst, bool require_si);

LinearProgram build_welfare_lp(const Instance& inst, bool require_si);
LinearProgram build_utilization_lp(const Instance& inst, bool require_si);

struct CeeiOptions {
  double tol = 1e-10;
  std::size_t max_iterations = 200000;
  double floor = 1e-12;
};

struct CeeiResult {
  Allocation allocation;
  std::vector<double> prices;  // capacity multipliers
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Generalized CEEI / proportional fairness: max sum_i log x_i subject to capacity
/// and caps, solved by projected gradient descent on the resource prices.
/// Throws ConvergenceError if the KKT residual stays above tol.
CeeiResult solve_ceei(const Instance& inst, const CeeiOptions& options = {});

}  // namespace lmmns
