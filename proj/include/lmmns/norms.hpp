#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lmmns/model.hpp"

namespace lmmns {

/// Per-task share arithmetic of an instance.
struct ShareProfile {
  Matrix weighted_shares;                  // ws_ij = r_ij / w_ij
  std::vector<double> norm_per_task;       // ||ws_i||_p
  std::vector<std::size_t> dominant_resource;  // argmax_j ws_ij, lowest index on ties
  std::vector<double> ns_max;              // ||ws_i||_p * B_i (inf when B_i is)
};

ShareProfile weighted_shares(const Instance& inst);

/// (sum v_j^p)^(1/p), or max_j v_j for the max-norm. Throws std::invalid_argument
/// on an empty vector.
double p_norm(std::span<const double> values, NormChoice norm);

/// x_i * max_j ws_ij
double dominant_share(const Instance& inst, const Allocation& alloc, std::size_t user);

/// x_i * r_ij, the fraction of resource j held by the user.
double raw_share(const Instance& inst, const Allocation& alloc, std::size_t user,
                 std::size_t resource);

/// max_j x_i * r_ij
double raw_dominant_share(const Instance& inst, const Allocation& alloc, std::size_t user);

}  // namespace lmmns
