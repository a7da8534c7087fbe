#include "lmmns/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lmmns/errors.hpp"
#include "lmmns/norms.hpp"

namespace lmmns {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw std::invalid_argument("ragged matrix: row " + std::to_string(r) + " has " +
                                  std::to_string(rows[r].size()) + " entries, expected " +
                                  std::to_string(cols));
    }
    std::copy(rows[r].begin(), rows[r].end(), out.row(r).begin());
  }
  return out;
}

NormChoice NormChoice::finite(double p) {
  if (!(p >= 1.0) || std::isinf(p)) {
    throw std::invalid_argument("norm exponent must be a finite number >= 1, got " +
                                std::to_string(p));
  }
  NormChoice n;
  n.infinite_ = false;
  n.p_ = p;
  return n;
}

std::string NormChoice::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << p_;
  return os.str();
}

NormChoice NormChoice::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse norm '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("cannot parse norm '" + text + "'");
  if (std::isinf(p)) return infinity();
  return finite(p);
}

bool Instance::has_zero_demand() const {
  return std::any_of(demands.data().begin(), demands.data().end(),
                     [](double r) { return r == 0.0; });
}

bool Instance::equal_weights(double tol) const {
  const double target = 1.0 / static_cast<double>(n_users);
  return std::all_of(weights.data().begin(), weights.data().end(),
                     [&](double w) { return std::abs(w - target) <= tol; });
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kDimensionMismatch: return "dimension mismatch";
    case ViolationKind::kWeightsNotNormalized: return "weights not normalized";
    case ViolationKind::kWeightOutOfRange: return "weight outside (0,1]";
    case ViolationKind::kNegativeDemand: return "negative demand";
    case ViolationKind::kDemandAboveCapacity: return "demand above capacity";
    case ViolationKind::kZeroDemandRow: return "all-zero demand row";
    case ViolationKind::kNonPositiveBound: return "non-positive task bound";
    case ViolationKind::kNormBelowOne: return "norm exponent below 1";
    case ViolationKind::kEmptyInstance: return "empty instance";
  }
  return "unknown";
}

bool ValidationResult::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

std::string ValidationResult::summary() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += to_string(v.kind);
    out += ": ";
    out += v.message;
  }
  return out;
}

ValidationResult validate(const Instance& inst) {
  ValidationResult result;
  auto add = [&](ViolationKind kind, std::string message) {
    result.violations.push_back({kind, std::move(message)});
  };
  const std::size_t n = inst.n_users;
  const std::size_t m = inst.n_resources;
  if (n == 0 || m == 0) {
    add(ViolationKind::kEmptyInstance, "need at least one user and one resource");
    return result;
  }
  if (inst.demands.rows() != n || inst.demands.cols() != m) {
    add(ViolationKind::kDimensionMismatch, "demands must be " + std::to_string(n) + "x" +
                                               std::to_string(m));
  }
  if (inst.weights.rows() != n || inst.weights.cols() != m) {
    add(ViolationKind::kDimensionMismatch, "weights must be " + std::to_string(n) + "x" +
                                               std::to_string(m));
  }
  if (inst.bounds.size() != n) {
    add(ViolationKind::kDimensionMismatch, "bounds must have " + std::to_string(n) + " entries");
  }
  if (!inst.norm.is_infinite() && !(inst.norm.p() >= 1.0)) {
    add(ViolationKind::kNormBelowOne, "p = " + inst.norm.to_string());
  }
  if (!result.ok()) return result;

  for (std::size_t i = 0; i < n; ++i) {
    bool any_positive = false;
    for (std::size_t j = 0; j < m; ++j) {
      const double r = inst.demand(i, j);
      const std::string at = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (!(r >= 0.0)) {
        add(ViolationKind::kNegativeDemand, "r" + at + " = " + std::to_string(r));
      } else if (r > 1.0) {
        add(ViolationKind::kDemandAboveCapacity, "r" + at + " = " + std::to_string(r));
      }
      if (r > 0.0) any_positive = true;
      const double w = inst.weight(i, j);
      if (!(w > 0.0 && w <= 1.0)) {
        add(ViolationKind::kWeightOutOfRange, "w" + at + " = " + std::to_string(w));
      }
    }
    if (!any_positive) add(ViolationKind::kZeroDemandRow, "user " + std::to_string(i));
    const double b = inst.bounds[i];
    if (!(b > 0.0)) {
      add(ViolationKind::kNonPositiveBound, "B_" + std::to_string(i) + " = " + std::to_string(b));
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += inst.weight(i, j);
    if (std::abs(sum - 1.0) > kWeightSumTolerance) {
      add(ViolationKind::kWeightsNotNormalized,
          "column " + std::to_string(j) + " sums to " + std::to_string(sum));
    }
  }
  return result;
}

void require_valid(const Instance& inst) {
  const auto result = validate(inst);
  if (!result.ok()) throw ValidationError("invalid instance: " + result.summary());
}

Matrix equal_weights(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("equal_weights needs n >= 1 and m >= 1");
  return Matrix(n, m, 1.0 / static_cast<double>(n));
}

Instance renormalize_weights(Instance inst) {
  for (std::size_t j = 0; j < inst.weights.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < inst.weights.rows(); ++i) sum += inst.weights(i, j);
    if (sum <= 0.0) throw ValidationError("weight column " + std::to_string(j) + " sums to zero");
    for (std::size_t i = 0; i < inst.weights.rows(); ++i) inst.weights(i, j) /= sum;
  }
  return inst;
}

Instance with_norm(Instance inst, NormChoice norm) {
  inst.norm = norm;
  return inst;
}

double Allocation::welfare() const {
  double sum = 0.0;
  for (double x : tasks) sum += x;
  return sum;
}

double Allocation::utilization() const {
  if (consumption.empty()) return 0.0;
  return *std::min_element(consumption.begin(), consumption.end());
}

Allocation make_allocation(const Instance& inst, std::vector<double> tasks) {
  if (tasks.size() != inst.n_users) {
    throw ValidationError("allocation has " + std::to_string(tasks.size()) +
                          " task counts for " + std::to_string(inst.n_users) + " users");
  }
  Allocation alloc;
  alloc.consumption.assign(inst.n_resources, 0.0);
  alloc.normalized_shares.resize(inst.n_users);
  std::vector<double> ws(inst.n_resources);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    for (std::size_t j = 0; j < inst.n_resources; ++j) {
      alloc.consumption[j] += inst.demand(i, j) * tasks[i];
      ws[j] = inst.demand(i, j) / inst.weight(i, j);
    }
    alloc.normalized_shares[i] = p_norm(ws, inst.norm) * tasks[i];
  }
  alloc.tasks = std::move(tasks);
  return alloc;
}

std::vector<std::string> allocation_violations(const Instance& inst, const Allocation& alloc,
                                               double tol) {
  std::vector<std::string> out;
  if (alloc.tasks.size() != inst.n_users || alloc.consumption.size() != inst.n_resources ||
      alloc.normalized_shares.size() != inst.n_users) {
    out.push_back("allocation dimensions do not match the instance");
    return out;
  }
  const Allocation fresh = make_allocation(inst, alloc.tasks);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    const double x = alloc.tasks[i];
    if (!(x >= -tol)) out.push_back("x_" + std::to_string(i) + " is negative");
    if (x > inst.bounds[i] + tol * std::max(1.0, inst.bounds[i])) {
      out.push_back("x_" + std::to_string(i) + " = " + std::to_string(x) + " exceeds B_" +
                    std::to_string(i) + " = " + std::to_string(inst.bounds[i]));
    }
    const double ns = fresh.normalized_shares[i];
    if (std::abs(ns - alloc.normalized_shares[i]) > tol * std::max(1.0, std::abs(ns))) {
      out.push_back("NS_" + std::to_string(i) + " inconsistent with x_" + std::to_string(i));
    }
  }
  for (std::size_t j = 0; j < inst.n_resources; ++j) {
    if (fresh.consumption[j] > 1.0 + tol) {
      out.push_back("resource " + std::to_string(j) + " over capacity: " +
                    std::to_string(fresh.consumption[j]));
    }
    if (std::abs(fresh.consumption[j] - alloc.consumption[j]) > tol) {
      out.push_back("consumption of resource " + std::to_string(j) + " inconsistent");
    }
  }
  return out;
}

}  // namespace lmmns
