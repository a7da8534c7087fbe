#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace lmmns {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// Row-major dense matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  const std::vector<double>& data() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// The fairness norm: a finite p >= 1, or the max-norm. The max-norm is its own
/// case and is never emulated with a large finite exponent.
class NormChoice {
 public:
  static NormChoice finite(double p);
  static NormChoice infinity() { return NormChoice(); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Exponent of a finite norm; +inf for the max-norm.
  double p() const noexcept { return infinite_ ? std::numeric_limits<double>::infinity() : p_; }

  std::string to_string() const;
  /// Accepts "inf", "infinity" or a decimal number.
  static NormChoice parse(const std::string& text);

  bool operator==(const NormChoice&) const = default;

 private:
  NormChoice() = default;
  bool infinite_ = true;
  double p_ = 0.0;
};

/// A single server shared by n users over m resource types, all capacities
/// normalized to 1.
struct Instance {
  std::size_t n_users = 0;
  std::size_t n_resources = 0;
  Matrix demands;               // r_ij: fraction of resource j per task of user i
  Matrix weights;               // w_ij: entitlement of user i on resource j
  std::vector<double> bounds;   // B_i, kUnbounded allowed
  NormChoice norm = NormChoice::infinity();

  double demand(std::size_t i, std::size_t j) const { return demands(i, j); }
  double weight(std::size_t i, std::size_t j) const { return weights(i, j); }
  bool has_zero_demand() const;
  bool equal_weights(double tol = 1e-12) const;
};

enum class ViolationKind {
  kDimensionMismatch,
  kWeightsNotNormalized,
  kWeightOutOfRange,
  kNegativeDemand,
  kDemandAboveCapacity,
  kZeroDemandRow,
  kNonPositiveBound,
  kNormBelowOne,
  kEmptyInstance,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const;
  std::string summary() const;
};

inline constexpr double kWeightSumTolerance = 1e-6;

ValidationResult validate(const Instance& inst);
/// Throws ValidationError carrying the summary when validate() fails.
void require_valid(const Instance& inst);

/// n x m matrix with every entry 1/n.
Matrix equal_weights(std::size_t n, std::size_t m);

/// Rescales each weight column to sum to one. Only applied on explicit request.
Instance renormalize_weights(Instance inst);

Instance with_norm(Instance inst, NormChoice norm);

/// Per-user task counts with the quantities derived from them.
struct Allocation {
  std::vector<double> tasks;              // x_i
  std::vector<double> consumption;        // c_j = sum_i r_ij x_i
  std::vector<double> normalized_shares;  // NS_i = ||ws_i||_p x_i

  double welfare() const;
  /// min_j c_j
  double utilization() const;
};

Allocation make_allocation(const Instance& inst, std::vector<double> tasks);

inline constexpr double kFeasibilityTolerance = 1e-9;

/// Capacity, bounds and NS consistency. Empty result means all invariants hold.
std::vector<std::string> allocation_violations(const Instance& inst, const Allocation& alloc,
                                               double tol = kFeasibilityTolerance);

}  // namespace lmmns
