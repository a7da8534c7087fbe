#pragma once

#include <stdexcept>
#include <string>

namespace lmmns {

// Instance or allocation data that breaks a model invariant (CLI exit 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The constraint system admits no solution, e.g. a floor above a cap (CLI exit 3).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative solver stopped before reaching its residual target (CLI exit 4).
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace lmmns
