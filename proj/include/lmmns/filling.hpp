#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "lmmns/model.hpp"

namespace lmmns {

/// What happens to growing users when a resource saturates.
enum class SaturationRule {
  /// Every growing user stops at the first saturation: NS_i = max(lo_i, min(hi_i, NS*)).
  kFreezeAll,
  /// Only users with positive demand on the saturated resource stop; the rest keep
  /// growing on the remaining resources.
  kFreezeTouching,
};

const char* to_string(SaturationRule rule);
/// "freeze-all" or "freeze-touching".
SaturationRule parse_saturation(const std::string& text);

enum class FreezeReason { kNone, kHitMax, kSaturated, kPinnedAtMin };

struct FillEvent {
  double level = 0.0;
  std::size_t frozen = 0;     // users frozen by this event
  std::size_t joined = 0;     // users released from their floor
  std::vector<std::size_t> saturated_resources;
};

struct FillOptions {
  SaturationRule rule = SaturationRule::kFreezeAll;
  /// Sharing-incentive floors x_i >= w_{i j_i} / r_{i j_i}. Off for plain filling.
  bool apply_floors = true;
  std::function<void(const FillEvent&)> observer;
};

struct FillResult {
  Allocation allocation;
  std::vector<FreezeReason> reasons;
  std::size_t events = 0;
};

/// Per-user sharing-incentive floor on the task count, w_{i j_i} / r_{i j_i}
/// (1 / (n r_{i j_i}) for equal weights).
std::vector<double> sharing_incentive_floors(const Instance& inst);

/// Progressive filling over normalized shares from each user's floor, event by event.
FillResult fill(const Instance& inst, const FillOptions& options);

/// LMM-optimal allocation subject to x_i >= floor_i (sharing incentive for every p).
/// Throws InfeasibleError when a floor exceeds B_i or the floors overload a resource.
Allocation solve_modified_lmmns(const Instance& inst,
                                SaturationRule rule = SaturationRule::kFreezeAll);

/// Plain LMMNS by event-driven water filling (no floors).
Allocation solve_waterfilling(const Instance& inst,
                              SaturationRule rule = SaturationRule::kFreezeTouching);

}  // namespace lmmns
