#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lmmns/model.hpp"

namespace lmmns {

/// Counter-based generator: every draw is a pure function of
/// (seed, trial, user, resource, stream, attempt), mixed with SplitMix64.
/// Output is identical on every platform and independent of draw order.
class StreamRng {
 public:
  enum class Stream : std::uint64_t { kDemand = 1, kBound = 2, kProbe = 3 };

  explicit StreamRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t trial, std::uint64_t user, std::uint64_t resource,
                     Stream stream, std::uint64_t attempt = 0) const;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t trial, std::uint64_t user, std::uint64_t resource, Stream stream,
                 std::uint64_t attempt = 0) const;

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct GenConfig {
  std::size_t n = 100;
  std::size_t m = 2;
  std::vector<NormChoice> p_values{NormChoice::infinity()};
  std::uint64_t seed = 1;
  std::size_t trials = 50;

  /// Throws std::invalid_argument when n, m or trials is zero or p_values is empty.
  void check() const;
};

inline constexpr double kNearZeroDemand = 1e-9;

/// r_ij ~ U(0,1) (a row is redrawn while all its entries are below 1e-9),
/// w_ij = 1/n, B_i ~ U[1/(n r_{i j_i}), 1/r_{i j_i}].
Instance gen_instance(const GenConfig& cfg, std::size_t trial,
                      NormChoice norm = NormChoice::infinity());

enum class MechanismId { kLmmns, kModified, kWaterfill, kCeei };
enum class Objective { kWelfare, kUtilization };
enum class OracleVariant { kPlain, kSharingIncentive };

const char* to_string(MechanismId id);
const char* to_string(Objective objective);
const char* to_string(OracleVariant variant);
MechanismId parse_mechanism(const std::string& text);
Objective parse_objective(const std::string& text);
OracleVariant parse_oracle(const std::string& text);

/// Runs the mechanism on an instance; lmmns routes zero demands to the multi-round solver.
Allocation run_mechanism(MechanismId id, const Instance& inst);

struct QualityRecord {
  MechanismId mechanism;
  Objective objective;
  OracleVariant oracle;
  std::size_t n = 0;
  std::size_t m = 0;
  NormChoice p = NormChoice::infinity();
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  double ratio = 0.0;  // mechanism objective / oracle objective
};

struct SweepPoint {
  NormChoice p = NormChoice::infinity();
  double mean = 0.0;
  std::size_t count = 0;
  std::size_t excluded = 0;  // trials whose oracle was infeasible
};

struct SweepResult {
  std::vector<QualityRecord> records;
  std::vector<SweepPoint> means;  // one per p, in sweep order
};

/// Objective value of an allocation: welfare sum x_i or utilization min_j c_j.
double objective_value(const Allocation& alloc, Objective objective);

SweepResult run_quality_sweep(const GenConfig& cfg, MechanismId mechanism, Objective objective,
                              OracleVariant oracle);

/// "a:b" (integer steps), "a:b:step", or a comma list; entries may be "inf".
std::vector<NormChoice> parse_p_sweep(const std::string& text);

inline constexpr const char* kCsvHeader = "mechanism,objective,oracle,n,m,p,seed,trial,ratio";

void write_csv(std::ostream& out, const std::vector<QualityRecord>& records);

}  // namespace lmmns
