#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lmmns/lp.hpp"

namespace lmmns {
namespace {

constexpr double kCostTol = 1e-10;
constexpr double kPivotTol = 1e-11;

enum class Where { kBasic, kLower, kUpper };

// Columns: structural variables, then one slack per row, then one artificial per row.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp)
      : rows_(lp.rows()), vars_(lp.variables()), cols_(vars_ + 2 * rows_),
        t_(rows_, cols_), lower_(cols_, 0.0), upper_(cols_, kUnbounded), value_(cols_, 0.0),
        where_(cols_, Where::kLower), basis_(rows_) {
    for (std::size_t v = 0; v < vars_; ++v) {
      lower_[v] = lp.lower[v];
      upper_[v] = lp.upper[v];
      value_[v] = lp.lower[v];
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      double residual = lp.rhs[r];
      for (std::size_t v = 0; v < vars_; ++v) {
        t_(r, v) = lp.constraints(r, v);
        residual -= lp.constraints(r, v) * lp.lower[v];
      }
      const std::size_t slack = vars_ + r;
      const std::size_t art = vars_ + rows_ + r;
      t_(r, slack) = 1.0;
      t_(r, art) = -1.0;
      if (residual >= 0.0) {
        // Artificial unused: pinned at zero from the start.
        upper_[art] = 0.0;
        basis_[r] = slack;
        where_[slack] = Where::kBasic;
        value_[slack] = residual;
      } else {
        // Make the artificial the basic column of this row: scale the row by -1.
        for (std::size_t c = 0; c < cols_; ++c) t_(r, c) = -t_(r, c);
        basis_[r] = art;
        where_[art] = Where::kBasic;
        value_[art] = -residual;
        needs_phase1_ = true;
      }
    }
  }

  bool needs_phase1() const { return needs_phase1_; }
  std::size_t artificial(std::size_t r) const { return vars_ + rows_ + r; }
  std::size_t slack(std::size_t r) const { return vars_ + r; }
  std::size_t columns() const { return cols_; }

  // Runs simplex for `cost`; false when unbounded.
  bool optimize(const std::vector<double>& cost, std::size_t& iterations) {
    const std::size_t limit = 100000 + 200 * cols_;
    for (;;) {
      if (iterations > limit) throw std::runtime_error("simplex iteration limit reached");
      std::size_t entering = cols_;
      double direction = 0.0;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (where_[c] == Where::kBasic || upper_[c] - lower_[c] <= 0.0) continue;
        const double d = reduced_cost(cost, c);
        if (where_[c] == Where::kLower && d > kCostTol) {
          entering = c;
          direction = 1.0;
          break;
        }
        if (where_[c] == Where::kUpper && d < -kCostTol) {
          entering = c;
          direction = -1.0;
          break;
        }
      }
      if (entering == cols_) return true;
      ++iterations;

      double step = upper_[entering] - lower_[entering];
      std::size_t leave_row = rows_;
      bool leave_to_upper = false;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double alpha = t_(r, entering) * direction;
        const std::size_t b = basis_[r];
        double limit_r = kUnbounded;
        bool to_upper = false;
        if (alpha > kPivotTol) {
          limit_r = std::max(value_[b] - lower_[b], 0.0) / alpha;
        } else if (alpha < -kPivotTol && std::isfinite(upper_[b])) {
          limit_r = std::max(upper_[b] - value_[b], 0.0) / -alpha;
          to_upper = true;
        }
        if (limit_r < step || (limit_r == step && leave_row < rows_ && b < basis_[leave_row])) {
          step = limit_r;
          leave_row = r;
          leave_to_upper = to_upper;
        }
      }
      if (std::isinf(step)) return false;

      for (std::size_t r = 0; r < rows_; ++r) {
        value_[basis_[r]] -= step * direction * t_(r, entering);
      }
      if (leave_row == rows_) {
        // Bound flip.
        where_[entering] = direction > 0 ? Where::kUpper : Where::kLower;
        value_[entering] = direction > 0 ? upper_[entering] : lower_[entering];
        continue;
      }
      const double entering_value = value_[entering] + direction * step;
      const std::size_t leaving = basis_[leave_row];
      where_[leaving] = leave_to_upper ? Where::kUpper : Where::kLower;
      value_[leaving] = leave_to_upper ? upper_[leaving] : lower_[leaving];
      pivot(leave_row, entering);
      value_[entering] = entering_value;
    }
  }

  void fix(std::size_t c, double at) {
    lower_[c] = at;
    upper_[c] = at;
    if (where_[c] != Where::kBasic) value_[c] = at;
  }

  double value(std::size_t c) const { return value_[c]; }

  double objective(const std::vector<double>& cost) const {
    double z = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) z += cost[c] * value_[c];
    return z;
  }

  // y_r = c_B^T B^{-1} e_r in the original row signs; the slack column already
  // carries any row flip, so it holds exactly that vector.
  std::vector<double> duals(const std::vector<double>& cost) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      double sum = 0.0;
      for (std::size_t k = 0; k < rows_; ++k) sum += cost[basis_[k]] * t_(k, slack(r));
      y[r] = sum;
    }
    return y;
  }

 private:
  double reduced_cost(const std::vector<double>& cost, std::size_t c) const {
    double d = cost[c];
    for (std::size_t r = 0; r < rows_; ++r) d -= cost[basis_[r]] * t_(r, c);
    return d;
  }

  void pivot(std::size_t row, std::size_t col) {
    const double p = t_(row, col);
    for (std::size_t c = 0; c < cols_; ++c) t_(row, c) /= p;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row) continue;
      const double f = t_(r, col);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < cols_; ++c) t_(r, c) -= f * t_(row, c);
    }
    basis_[row] = col;
    where_[col] = Where::kBasic;
  }

  std::size_t rows_;
  std::size_t vars_;
  std::size_t cols_;
  Matrix t_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> value_;
  std::vector<Where> where_;
  std::vector<std::size_t> basis_;
  bool needs_phase1_ = false;
};

}  // namespace

void LinearProgram::check() const {
  const std::size_t n = variables();
  if (constraints.rows() != rows() || (rows() > 0 && constraints.cols() != n)) {
    throw std::invalid_argument("constraint matrix does not match objective/rhs sizes");
  }
  if (lower.size() != n || upper.size() != n) {
    throw std::invalid_argument("bound vectors do not match the variable count");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!std::isfinite(lower[v])) throw std::invalid_argument("lower bounds must be finite");
    if (std::isnan(upper[v])) throw std::invalid_argument("upper bound is NaN");
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

LpSolution simplex_solve(const LinearProgram& lp) {
  lp.check();
  LpSolution out;
  for (std::size_t v = 0; v < lp.variables(); ++v) {
    if (lp.upper[v] < lp.lower[v]) return out;  // empty box
  }
  Tableau tab(lp);
  const std::size_t rows = lp.rows();
  const std::size_t cols = tab.columns();

  if (tab.needs_phase1()) {
    std::vector<double> phase1(cols, 0.0);
    double scale = 1.0;
    for (std::size_t r = 0; r < rows; ++r) {
      phase1[tab.artificial(r)] = -1.0;
      scale = std::max(scale, std::abs(lp.rhs[r]));
    }
    tab.optimize(phase1, out.iterations);
    if (tab.objective(phase1) < -1e-9 * scale) return out;
  }
  for (std::size_t r = 0; r < rows; ++r) tab.fix(tab.artificial(r), 0.0);

  std::vector<double> cost(cols, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  if (!tab.optimize(cost, out.iterations)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x.resize(lp.variables());
  for (std::size_t v = 0; v < lp.variables(); ++v) out.x[v] = tab.value(v);
  out.value = 0.0;
  for (std::size_t v = 0; v < lp.variables(); ++v) out.value += lp.objective[v] * out.x[v];
  out.duals = tab.duals(cost);
  return out;
}

Certificate certify(const LinearProgram& lp, const LpSolution& solution, double primal_tol,
                    double gap_tol) {
  lp.check();
  Certificate cert;
  if (solution.status != LpStatus::kOptimal || solution.x.size() != lp.variables() ||
      solution.duals.size() != lp.rows()) {
    cert.primal_residual = kUnbounded;
    return cert;
  }
  const auto& x = solution.x;
  const auto& y = solution.duals;
  const std::size_t n = lp.variables();

  double scale = 1.0;
  for (std::size_t v = 0; v < n; ++v) scale = std::max(scale, std::abs(x[v]));

  std::vector<double> slack(lp.rows());
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    double ax = 0.0;
    for (std::size_t v = 0; v < n; ++v) ax += lp.constraints(r, v) * x[v];
    slack[r] = lp.rhs[r] - ax;
    cert.primal_residual = std::max(cert.primal_residual, -slack[r]);
    cert.dual_infeasibility = std::max(cert.dual_infeasibility, -y[r]);
    cert.complementarity = std::max(cert.complementarity, std::abs(y[r] * slack[r]));
  }
  double dual_objective = 0.0;
  for (std::size_t r = 0; r < lp.rows(); ++r) dual_objective += lp.rhs[r] * y[r];
  double primal_objective = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    cert.primal_residual = std::max(cert.primal_residual, lp.lower[v] - x[v]);
    if (std::isfinite(lp.upper[v])) {
      cert.primal_residual = std::max(cert.primal_residual, x[v] - lp.upper[v]);
    }
    primal_objective += lp.objective[v] * x[v];
    double d = lp.objective[v];
    for (std::size_t r = 0; r < lp.rows(); ++r) d -= lp.constraints(r, v) * y[r];
    if (d > 0.0) {
      if (!std::isfinite(lp.upper[v])) {
        cert.dual_infeasibility = std::max(cert.dual_infeasibility, d);
      } else {
        dual_objective += d * lp.upper[v];
        cert.complementarity = std::max(cert.complementarity, d * (lp.upper[v] - x[v]));
      }
    } else {
      dual_objective += d * lp.lower[v];
      cert.complementarity = std::max(cert.complementarity, -d * (x[v] - lp.lower[v]));
    }
  }
  cert.duality_gap = std::abs(primal_objective - dual_objective);
  const double tol_scaled = primal_tol * scale;
  cert.ok = cert.primal_residual <= tol_scaled && cert.dual_infeasibility <= primal_tol &&
            cert.complementarity <= gap_tol * (1.0 + std::abs(primal_objective)) &&
            cert.duality_gap <= gap_tol * (1.0 + std::abs(primal_objective));
  return cert;
}

}  // namespace lmmns
