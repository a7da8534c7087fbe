#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lmmns/model.hpp"
#include "lmmns/properties.hpp"

namespace lmmns {

inline constexpr int kSchemaVersion = 1;

struct InstanceReadOptions {
  bool renormalize_weights = false;
};

/// Instance schema: {"schema": 1, "users": n, "resources": m, "demands": [[...]],
/// "weights": [[...]] (optional, default 1/n), "bounds": [number | "inf"] (optional,
/// default "inf"), "p": number | "inf"}. Throws ValidationError with a location on
/// malformed input; the result is validated.
Instance instance_from_json(const nlohmann::json& j, const InstanceReadOptions& options = {});
nlohmann::json instance_to_json(const Instance& inst);

Instance read_instance(const std::filesystem::path& path, const InstanceReadOptions& options = {});

nlohmann::json allocation_to_json(const Instance& inst, const Allocation& alloc,
                                  const std::string& mechanism, const nlohmann::json& meta = {});
/// Reads the "tasks" array of an allocation document and recomputes derived fields.
Allocation allocation_from_json(const Instance& inst, const nlohmann::json& j);

nlohmann::json report_to_json(const PropertyReport& report);

/// Parses a JSON file; parse failures become ValidationError naming the byte offset.
nlohmann::json read_json_file(const std::filesystem::path& path);

double number_or_inf(const nlohmann::json& j, const std::string& what);
nlohmann::json inf_or_number(double v);

}  // namespace lmmns
