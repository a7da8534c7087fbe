#include "lmmns/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lmmns {

double p_norm(std::span<const double> values, NormChoice norm) {
  if (values.empty()) throw std::invalid_argument("p_norm of an empty vector");
  const double largest = *std::max_element(values.begin(), values.end());
  if (norm.is_infinite() || largest == 0.0) return largest;
  const double p = norm.p();
  if (p == 1.0) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  // Scale by the largest entry so v^p cannot overflow or underflow to zero.
  double sum = 0.0;
  for (double v : values) sum += std::pow(v / largest, p);
  return largest * std::pow(sum, 1.0 / p);
}

ShareProfile weighted_shares(const Instance& inst) {
  const std::size_t n = inst.n_users;
  const std::size_t m = inst.n_resources;
  ShareProfile profile;
  profile.weighted_shares = Matrix(n, m);
  profile.norm_per_task.resize(n);
  profile.dominant_resource.resize(n);
  profile.ns_max.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ws = profile.weighted_shares.row(i);
    std::size_t best = 0;
    for (std::size_t j = 0; j < m; ++j) {
      ws[j] = inst.demand(i, j) / inst.weight(i, j);
      if (ws[j] > ws[best]) best = j;
    }
    profile.dominant_resource[i] = best;
    profile.norm_per_task[i] = p_norm(ws, inst.norm);
    profile.ns_max[i] = std::isinf(inst.bounds[i]) ? kUnbounded
                                                   : profile.norm_per_task[i] * inst.bounds[i];
  }
  return profile;
}

double dominant_share(const Instance& inst, const Allocation& alloc, std::size_t user) {
  if (user >= inst.n_users || user >= alloc.tasks.size()) {
    throw std::out_of_range("user index " + std::to_string(user) + " out of range");
  }
  double best = 0.0;
  for (std::size_t j = 0; j < inst.n_resources; ++j) {
    best = std::max(best, inst.demand(user, j) / inst.weight(user, j));
  }
  return alloc.tasks[user] * best;
}

double raw_share(const Instance& inst, const Allocation& alloc, std::size_t user,
                 std::size_t resource) {
  if (user >= inst.n_users || resource >= inst.n_resources) {
    throw std::out_of_range("share index out of range");
  }
  return alloc.tasks[user] * inst.demand(user, resource);
}

double raw_dominant_share(const Instance& inst, const Allocation& alloc, std::size_t user) {
  if (user >= inst.n_users) throw std::out_of_range("user index out of range");
  double best = 0.0;
  for (std::size_t j = 0; j < inst.n_resources; ++j) {
    best = std::max(best, alloc.tasks[user] * inst.demand(user, j));
  }
  return best;
}

}  // namespace lmmns
