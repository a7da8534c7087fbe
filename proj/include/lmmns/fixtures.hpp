#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lmmns/filling.hpp"
#include "lmmns/model.hpp"

namespace lmmns {

/// One expected outcome of a fixture. `mechanism` is a solver name as accepted by
/// the CLI, or "given" for the allocation stored in `given_tasks`.
struct Assertion {
  std::string kind;  // tasks | total_tasks | utilization | consumption | user_fraction |
                     // property | gsp | welfare_ratio | utilization_ratio
  std::string mechanism = "lmmns";
  std::optional<NormChoice> p;             // overrides the instance norm
  std::optional<SaturationRule> saturation;
  std::vector<double> values;              // tasks / consumption vectors
  double value = 0.0;                      // scalar expectations
  std::size_t user = 0;                    // user_fraction
  std::optional<std::size_t> resource;     // user_fraction; all resources when empty
  std::string property;                    // pe | si | ef | bbf
  bool holds = true;
  std::optional<double> witness_lhs;       // property failures: expected witness lhs
  double tol = 1e-6;
  std::string provenance;
};

struct Fixture {
  std::string name;
  Instance instance;
  std::vector<double> given_tasks;
  std::vector<Assertion> expected;
  std::string provenance;
};

/// The fixture directory compiled into the library; LMMNS_FIXTURES overrides it.
std::filesystem::path default_fixture_dir();

/// Reads <dir>/<name>.instance.json and <dir>/<name>.expected.json.
/// Throws std::invalid_argument for an unknown name.
Fixture load_fixture(const std::string& name, const std::filesystem::path& dir = {});

std::vector<std::string> fixture_names(const std::filesystem::path& dir = {});

/// The resource-sharing example with m resources and m+1 users used to contrast
/// the max-norm and the 1-norm (user 0 needs 1/2 of everything, user k needs 1/2
/// of resource k-1 only, caps 2, equal weights).
Instance sec7_figure4_instance(std::size_t m, NormChoice norm);

/// Mechanism by name: lmmns, lmmns-general, oracle, modified, waterfill, ceei,
/// welfare-lp, util-lp, welfare-lp-si, util-lp-si. The saturation rule applies to
/// modified and waterfill only. Throws std::invalid_argument for unknown names.
Allocation solve_named(const std::string& mechanism, const Instance& inst,
                       std::optional<SaturationRule> saturation = std::nullopt);

struct AssertionOutcome {
  bool passed = false;
  std::string message;
};

/// Evaluates one assertion, running the designated mechanism.
AssertionOutcome evaluate(const Fixture& fixture, const Assertion& assertion);

}  // namespace lmmns
