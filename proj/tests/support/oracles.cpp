#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace lmmns::testing {

std::optional<std::vector<double>> gauss_solve(std::vector<std::vector<double>> m,
                                               std::vector<double> v) {
  const std::size_t n = v.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(v[pivot], v[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      v[r] -= f * v[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = v[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return x;
}

std::optional<VertexOptimum> vertex_enumeration(const LinearProgram& lp, double tol) {
  const std::size_t n = lp.variables();
  // Every constraint as g.x <= h.
  std::vector<std::vector<double>> g;
  std::vector<double> h;
  for (std::size_t r = 0; r < lp.rows(); ++r) {
    const auto row = lp.constraints.row(r);
    g.emplace_back(row.begin(), row.end());
    h.push_back(lp.rhs[r]);
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<double> e(n, 0.0);
    e[v] = -1.0;
    g.push_back(e);
    h.push_back(-lp.lower[v]);
    if (std::isfinite(lp.upper[v])) {
      e[v] = 1.0;
      g.push_back(e);
      h.push_back(lp.upper[v]);
    }
  }
  const std::size_t k = g.size();
  if (k < n) return std::nullopt;

  std::optional<VertexOptimum> best;
  std::vector<bool> pick(k, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(n), true);
  std::size_t visited = 0;
  do {
    std::vector<std::vector<double>> m;
    std::vector<double> v;
    for (std::size_t c = 0; c < k; ++c) {
      if (pick[c]) {
        m.push_back(g[c]);
        v.push_back(h[c]);
      }
    }
    const auto x = gauss_solve(m, v);
    if (!x) continue;
    bool feasible = true;
    for (std::size_t c = 0; c < k && feasible; ++c) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < n; ++j) lhs += g[c][j] * (*x)[j];
      feasible = lhs <= h[c] + tol * std::max(1.0, std::abs(h[c]));
    }
    if (!feasible) continue;
    ++visited;
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) value += lp.objective[j] * (*x)[j];
    if (!best || value > best->value) best = VertexOptimum{value, *x, 0};
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (best) best->vertices = visited;
  return best;
}

Instance random_instance(std::uint64_t seed, const RandomSpec& spec) {
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  Instance inst;
  inst.n_users = spec.n;
  inst.n_resources = spec.m;
  inst.demands = Matrix(spec.n, spec.m);
  inst.bounds.resize(spec.n);
  inst.norm = spec.norm;
  for (std::size_t i = 0; i < spec.n; ++i) {
    bool any = false;
    while (!any) {
      for (std::size_t j = 0; j < spec.m; ++j) {
        const bool zero = unit() < spec.zero_probability;
        inst.demands(i, j) = zero ? 0.0 : 0.01 + 0.99 * unit();
        any = any || inst.demands(i, j) > 0.0;
      }
    }
    inst.bounds[i] = unit() < spec.finite_bound_probability ? 0.5 + 20.0 * unit() : kUnbounded;
  }
  if (spec.equal_weights) {
    inst.weights = equal_weights(spec.n, spec.m);
  } else {
    inst.weights = Matrix(spec.n, spec.m);
    for (std::size_t j = 0; j < spec.m; ++j) {
      double total = 0.0;
      for (std::size_t i = 0; i < spec.n; ++i) {
        inst.weights(i, j) = 0.2 + unit();
        total += inst.weights(i, j);
      }
      for (std::size_t i = 0; i < spec.n; ++i) inst.weights(i, j) /= total;
    }
  }
  return inst;
}

}  // namespace lmmns::testing
