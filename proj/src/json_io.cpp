#include "lmmns/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "lmmns/errors.hpp"

namespace lmmns {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ValidationError(where + ": " + what);
}

const json& field(const json& j, const char* key) {
  if (!j.contains(key)) bad(key, "missing field");
  return j.at(key);
}

std::size_t count(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer() || v.get<long long>() < 0) bad(key, "expected a non-negative integer");
  return v.get<std::size_t>();
}

Matrix matrix(const json& j, const std::string& key, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) bad(key, "expected an array of rows");
  if (j.size() != rows) {
    bad(key, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  }
  Matrix out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string where = key + "[" + std::to_string(r) + "]";
    const json& row = j[r];
    if (!row.is_array()) bad(where, "expected an array");
    if (row.size() != cols) {
      bad(where, "expected " + std::to_string(cols) + " entries, found " +
                     std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) bad(where + "[" + std::to_string(c) + "]", "expected a number");
      out(r, c) = row[c].get<double>();
    }
  }
  return out;
}

}  // namespace

double number_or_inf(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return kUnbounded;
  }
  bad(what, "expected a number or \"inf\"");
}

json inf_or_number(double v) {
  if (std::isinf(v) && v > 0) return "inf";
  return v;
}

Instance instance_from_json(const json& j, const InstanceReadOptions& options) {
  if (!j.is_object()) bad("instance", "expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) {
    bad("schema", "unsupported version " + j.at("schema").dump());
  }
  Instance inst;
  inst.n_users = count(j, "users");
  inst.n_resources = count(j, "resources");
  inst.demands = matrix(field(j, "demands"), "demands", inst.n_users, inst.n_resources);
  if (j.contains("weights")) {
    inst.weights = matrix(j.at("weights"), "weights", inst.n_users, inst.n_resources);
  } else {
    inst.weights = equal_weights(inst.n_users, inst.n_resources);
  }
  inst.bounds.assign(inst.n_users, kUnbounded);
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    if (!b.is_array() || b.size() != inst.n_users) {
      bad("bounds", "expected an array of " + std::to_string(inst.n_users) + " entries");
    }
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      inst.bounds[i] = number_or_inf(b[i], "bounds[" + std::to_string(i) + "]");
    }
  }
  if (j.contains("p")) {
    const json& p = j.at("p");
    try {
      inst.norm = p.is_string() ? NormChoice::parse(p.get<std::string>())
                                : NormChoice::finite(p.get<double>());
    } catch (const std::exception& e) {
      bad("p", e.what());
    }
  }
  if (options.renormalize_weights) inst = renormalize_weights(std::move(inst));
  require_valid(inst);
  return inst;
}

json instance_to_json(const Instance& inst) {
  json demands = json::array();
  json weights = json::array();
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    const auto r = inst.demands.row(i);
    const auto w = inst.weights.row(i);
    demands.push_back(std::vector<double>(r.begin(), r.end()));
    weights.push_back(std::vector<double>(w.begin(), w.end()));
  }
  json bounds = json::array();
  for (double b : inst.bounds) bounds.push_back(inf_or_number(b));
  json p = inst.norm.is_infinite() ? json("inf") : json(inst.norm.p());
  return json{{"schema", kSchemaVersion}, {"users", inst.n_users},
              {"resources", inst.n_resources}, {"demands", demands},
              {"weights", weights}, {"bounds", bounds}, {"p", p}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": parse error at byte " + std::to_string(e.byte) +
                          ": " + e.what());
  }
}

Instance read_instance(const std::filesystem::path& path, const InstanceReadOptions& options) {
  const json j = read_json_file(path);
  try {
    return instance_from_json(j, options);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

json allocation_to_json(const Instance& inst, const Allocation& alloc,
                        const std::string& mechanism, const json& meta) {
  json out{{"schema", kSchemaVersion},
           {"mechanism", mechanism},
           {"p", inst.norm.is_infinite() ? json("inf") : json(inst.norm.p())},
           {"tasks", alloc.tasks},
           {"normalized_shares", alloc.normalized_shares},
           {"consumption", alloc.consumption},
           {"welfare", alloc.welfare()},
           {"utilization", alloc.utilization()}};
  if (!meta.is_null()) out["meta"] = meta;
  return out;
}

Allocation allocation_from_json(const Instance& inst, const json& j) {
  if (!j.is_object()) bad("allocation", "expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) {
    bad("schema", "unsupported version " + j.at("schema").dump());
  }
  const json& tasks = field(j, "tasks");
  if (!tasks.is_array()) bad("tasks", "expected an array");
  if (tasks.size() != inst.n_users) {
    bad("tasks", "expected " + std::to_string(inst.n_users) + " entries, found " +
                     std::to_string(tasks.size()));
  }
  std::vector<double> x(inst.n_users);
  for (std::size_t i = 0; i < inst.n_users; ++i) {
    if (!tasks[i].is_number()) bad("tasks[" + std::to_string(i) + "]", "expected a number");
    x[i] = tasks[i].get<double>();
  }
  return make_allocation(inst, std::move(x));
}

json report_to_json(const PropertyReport& report) {
  json out{{"property", report.property},
           {"holds", report.holds},
           {"tolerance", report.tolerance}};
  if (report.scenarios > 0) out["scenarios"] = report.scenarios;
  if (report.witness) {
    const Witness& w = *report.witness;
    out["witness"] = json{{"users", w.users},
                          {"resource", w.resource ? json(*w.resource) : json(nullptr)},
                          {"lhs", inf_or_number(w.lhs)},
                          {"rhs", inf_or_number(w.rhs)},
                          {"detail", w.detail}};
  }
  return out;
}

}  // namespace lmmns
