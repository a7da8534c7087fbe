#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lmmns/errors.hpp"
#include "lmmns/lp.hpp"

namespace lmmns {
namespace {

struct Dual {
  const Instance& inst;
  double floor;

  double price(const std::vector<double>& lambda, std::size_t i) const {
    double s = 0.0;
    for (std::size_t j = 0; j < inst.n_resources; ++j) s += lambda[j] * inst.demand(i, j);
    return std::max(s, floor);
  }

  std::vector<double> tasks(const std::vector<double>& lambda) const {
    std::vector<double> x(inst.n_users);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      x[i] = std::min(inst.bounds[i], 1.0 / price(lambda, i));
    }
    return x;
  }

  std::vector<double> consumption(const std::vector<double>& x) const {
    std::vector<double> c(inst.n_resources, 0.0);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      for (std::size_t j = 0; j < inst.n_resources; ++j) c[j] += inst.demand(i, j) * x[i];
    }
    return c;
  }

  // Lagrangian dual: sum_i (log x_i - price_i x_i) + sum_j lambda_j.
  double value(const std::vector<double>& lambda) const {
    double v = std::accumulate(lambda.begin(), lambda.end(), 0.0);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      const double p = price(lambda, i);
      const double x = std::min(inst.bounds[i], 1.0 / p);
      v += std::log(x) - p * x;
    }
    return v;
  }
};

double kkt_residual(const std::vector<double>& lambda, const std::vector<double>& c) {
  double r = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    r = std::max(r, std::abs(std::min(lambda[j], 1.0 - c[j])));
  }
  return r;
}

}  // namespace

CeeiResult solve_ceei(const Instance& inst, const CeeiOptions& options) {
  require_valid(inst);
  const std::size_t m = inst.n_resources;
  const Dual dual{inst, options.floor};

  std::vector<double> lambda(m, static_cast<double>(inst.n_users));
  std::vector<double> x = dual.tasks(lambda);
  std::vector<double> c = dual.consumption(x);
  std::vector<double> grad(m);
  for (std::size_t j = 0; j < m; ++j) grad[j] = 1.0 - c[j];
  double value = dual.value(lambda);
  double step = 1.0;

  CeeiResult out;
  std::size_t it = 0;
  double residual = kkt_residual(lambda, c);
  std::vector<double> trial(m);
  for (; it < options.max_iterations && residual > options.tol; ++it) {
    // Projected step with Armijo backtracking on the dual objective.
    double trial_value = 0.0;
    for (int back = 0;; ++back) {
      double decrease = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        trial[j] = std::max(0.0, lambda[j] - step * grad[j]);
        decrease += grad[j] * (trial[j] - lambda[j]);
      }
      trial_value = dual.value(trial);
      // Slack at rounding level: near the optimum the predicted decrease drops below
      // the resolution of the dual objective itself.
      const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(value));
      if (trial_value <= value + 1e-4 * decrease + noise || back > 60) break;
      step *= 0.5;
    }
    const std::vector<double> x_new = dual.tasks(trial);
    const std::vector<double> c_new = dual.consumption(x_new);
    double ss = 0.0;
    double sy = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double s = trial[j] - lambda[j];
      const double y = (1.0 - c_new[j]) - grad[j];
      ss += s * s;
      sy += s * y;
    }
    lambda = trial;
    c = c_new;
    value = trial_value;
    for (std::size_t j = 0; j < m; ++j) grad[j] = 1.0 - c[j];
    // Barzilai-Borwein step for the next iteration.
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-12, 1e12) : std::min(step * 2.0, 1e12);
    residual = kkt_residual(lambda, c);
  }
  if (residual > options.tol) {
    throw ConvergenceError("CEEI price iteration did not converge", residual);
  }

  x = dual.tasks(lambda);
  c = dual.consumption(x);
  const double over = std::max(1.0, *std::max_element(c.begin(), c.end()));
  for (double& v : x) v /= over;
  out.allocation = make_allocation(inst, std::move(x));
  out.prices = std::move(lambda);
  out.residual = residual;
  out.iterations = it;
  return out;
}

}  // namespace lmmns
