#include "lmmns/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "lmmns/errors.hpp"
#include "lmmns/json_io.hpp"
#include "lmmns/lmmns.hpp"
#include "lmmns/lp.hpp"
#include "lmmns/norms.hpp"
#include "lmmns/properties.hpp"

#ifndef LMMNS_FIXTURE_DIR
#define LMMNS_FIXTURE_DIR "fixtures"
#endif

namespace lmmns {

using nlohmann::json;

namespace {

constexpr const char* kInstanceSuffix = ".instance.json";
constexpr const char* kExpectedSuffix = ".expected.json";

std::filesystem::path resolve(const std::filesystem::path& dir) {
  return dir.empty() ? default_fixture_dir() : dir;
}

Assertion assertion_from_json(const json& j, const std::string& where) {
  Assertion a;
  try {
    a.kind = j.at("kind").get<std::string>();
    a.mechanism = j.value("mechanism", std::string("lmmns"));
    if (j.contains("p")) {
      const json& p = j.at("p");
      a.p = p.is_string() ? NormChoice::parse(p.get<std::string>())
                          : NormChoice::finite(p.get<double>());
    }
    if (j.contains("saturation")) a.saturation = parse_saturation(j.at("saturation"));
    if (j.contains("values")) a.values = j.at("values").get<std::vector<double>>();
    if (j.contains("value")) a.value = number_or_inf(j.at("value"), where + ".value");
    a.user = j.value("user", std::size_t{0});
    if (j.contains("resource")) a.resource = j.at("resource").get<std::size_t>();
    a.property = j.value("property", std::string());
    a.holds = j.value("holds", true);
    if (j.contains("witness_lhs")) a.witness_lhs = j.at("witness_lhs").get<double>();
    a.tol = j.value("tol", 1e-6);
    a.provenance = j.at("provenance").get<std::string>();
  } catch (const json::exception& e) {
    throw ValidationError(where + ": " + e.what());
  }
  return a;
}

bool close(double got, double want, double tol) {
  if (std::isinf(want)) return got == want;
  return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

std::string format_vector(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? ", " : "") << v[k];
  os << ')';
  return os.str();
}

AssertionOutcome compare_vector(const char* what, const std::vector<double>& got,
                                const std::vector<double>& want, double tol) {
  AssertionOutcome out;
  out.passed = got.size() == want.size();
  for (std::size_t k = 0; out.passed && k < got.size(); ++k) {
    out.passed = close(got[k], want[k], tol);
  }
  out.message = std::string(what) + " " + format_vector(got) + " vs expected " +
                format_vector(want);
  return out;
}

AssertionOutcome compare_scalar(const std::string& what, double got, double want, double tol) {
  std::ostringstream os;
  os.precision(15);
  os << what << ' ' << got << " vs expected " << want;
  return {close(got, want, tol), os.str()};
}

PropertyReport run_property(const std::string& name, const Instance& inst,
                            const Allocation& alloc) {
  if (name == "pe") return check_pe(inst, alloc);
  if (name == "si") return check_si(inst, alloc);
  if (name == "ef") return check_ef(inst, alloc);
  if (name == "bbf") return check_bbf(inst, alloc);
  throw std::invalid_argument("unknown property '" + name + "'");
}

}  // namespace

std::filesystem::path default_fixture_dir() {
  if (const char* env = std::getenv("LMMNS_FIXTURES"); env && *env) return env;
  return LMMNS_FIXTURE_DIR;
}

Fixture load_fixture(const std::string& name, const std::filesystem::path& dir) {
  const auto base = resolve(dir);
  const auto instance_path = base / (name + kInstanceSuffix);
  if (!std::filesystem::exists(instance_path)) {
    throw std::invalid_argument("unknown fixture '" + name + "'");
  }
  Fixture f;
  f.name = name;
  f.instance = read_instance(instance_path);
  const auto expected_path = base / (name + kExpectedSuffix);
  const json doc = read_json_file(expected_path);
  try {
    f.provenance = doc.at("provenance").get<std::string>();
    if (doc.contains("given_tasks")) {
      f.given_tasks = doc.at("given_tasks").get<std::vector<double>>();
      if (f.given_tasks.size() != f.instance.n_users) {
        throw ValidationError(expected_path.string() + ": given_tasks has the wrong length");
      }
    }
    const json& list = doc.at("assertions");
    for (std::size_t k = 0; k < list.size(); ++k) {
      f.expected.push_back(
          assertion_from_json(list[k], expected_path.string() + ": assertions[" +
                                           std::to_string(k) + "]"));
    }
  } catch (const json::exception& e) {
    throw ValidationError(expected_path.string() + ": " + e.what());
  }
  return f;
}

std::vector<std::string> fixture_names(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  const std::string suffix = kInstanceSuffix;
  for (const auto& entry : std::filesystem::directory_iterator(resolve(dir))) {
    const std::string file = entry.path().filename().string();
    if (file.size() > suffix.size() &&
        file.compare(file.size() - suffix.size(), suffix.size(), suffix) == 0) {
      names.push_back(file.substr(0, file.size() - suffix.size()));
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

Instance sec7_figure4_instance(std::size_t m, NormChoice norm) {
  if (m == 0) throw std::invalid_argument("need at least one resource");
  Instance inst;
  inst.n_users = m + 1;
  inst.n_resources = m;
  inst.demands = Matrix(m + 1, m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    inst.demands(0, j) = 0.5;
    inst.demands(j + 1, j) = 0.5;
  }
  inst.weights = equal_weights(m + 1, m);
  inst.bounds.assign(m + 1, 2.0);
  inst.norm = norm;
  require_valid(inst);
  return inst;
}

Allocation solve_named(const std::string& mechanism, const Instance& inst,
                       std::optional<SaturationRule> saturation) {
  if (mechanism == "lmmns") {
    return inst.has_zero_demand() ? solve_lmmns_general(inst) : solve_lmmns(inst);
  }
  if (mechanism == "lmmns-general") return solve_lmmns_general(inst);
  if (mechanism == "oracle") return oracle_binary_search(inst);
  if (mechanism == "modified") {
    return solve_modified_lmmns(inst, saturation.value_or(SaturationRule::kFreezeAll));
  }
  if (mechanism == "waterfill") {
    return solve_waterfilling(inst, saturation.value_or(SaturationRule::kFreezeTouching));
  }
  if (mechanism == "ceei") return solve_ceei(inst).allocation;
  if (mechanism == "welfare-lp") return welfare_lp(inst, false).allocation;
  if (mechanism == "util-lp") return utilization_lp(inst, false).allocation;
  if (mechanism == "welfare-lp-si") return welfare_lp(inst, true).allocation;
  if (mechanism == "util-lp-si") return utilization_lp(inst, true).allocation;
  throw std::invalid_argument("unknown mechanism '" + mechanism + "'");
}

AssertionOutcome evaluate(const Fixture& fixture, const Assertion& a) {
  const Instance inst = a.p ? with_norm(fixture.instance, *a.p) : fixture.instance;

  if (a.kind == "gsp") {
    const auto mechanism = [&](const Instance& in) {
      return solve_named(a.mechanism, in, a.saturation);
    };
    const PropertyReport report = probe_gsp(inst, mechanism);
    AssertionOutcome out{report.holds == a.holds, "GSP probe over " +
                                                      std::to_string(report.scenarios) +
                                                      " scenarios: " +
                                                      (report.holds ? "no deviation" : "deviation")};
    if (report.witness) out.message += " (" + report.witness->detail + ")";
    return out;
  }

  Allocation alloc;
  if (a.mechanism == "given") {
    if (fixture.given_tasks.empty()) throw std::invalid_argument("fixture has no given tasks");
    alloc = make_allocation(inst, fixture.given_tasks);
  } else {
    alloc = solve_named(a.mechanism, inst, a.saturation);
  }

  if (a.kind == "tasks") return compare_vector("tasks", alloc.tasks, a.values, a.tol);
  if (a.kind == "consumption") {
    return compare_vector("consumption", alloc.consumption, a.values, a.tol);
  }
  if (a.kind == "total_tasks") return compare_scalar("welfare", alloc.welfare(), a.value, a.tol);
  if (a.kind == "utilization") {
    return compare_scalar("utilization", alloc.utilization(), a.value, a.tol);
  }
  if (a.kind == "user_fraction") {
    const double got = a.resource ? raw_share(inst, alloc, a.user, *a.resource)
                                  : raw_dominant_share(inst, alloc, a.user);
    return compare_scalar("fraction of user " + std::to_string(a.user), got, a.value, a.tol);
  }
  if (a.kind == "welfare_ratio") {
    const double best = welfare_lp(inst, false).objective;
    return compare_scalar("optimal/mechanism welfare", best / alloc.welfare(), a.value, a.tol);
  }
  if (a.kind == "utilization_ratio") {
    const double best = utilization_lp(inst, false).objective;
    return compare_scalar("optimal/mechanism utilization", best / alloc.utilization(), a.value,
                          a.tol);
  }
  if (a.kind == "property") {
    const PropertyReport report = run_property(a.property, inst, alloc);
    AssertionOutcome out{report.holds == a.holds,
                         a.property + (report.holds ? " holds" : " fails")};
    if (report.witness) {
      out.message += ": " + report.witness->detail;
      if (a.witness_lhs) {
        const auto w = compare_scalar("witness lhs", report.witness->lhs, *a.witness_lhs, a.tol);
        out.passed = out.passed && w.passed;
        out.message += "; " + w.message;
      }
    } else if (a.witness_lhs) {
      out.passed = false;
      out.message += "; expected a witness";
    }
    return out;
  }
  throw std::invalid_argument("unknown assertion kind '" + a.kind + "'");
}

}  // namespace lmmns
