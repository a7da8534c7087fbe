// Command-line front end: solve, check, compare, gen, bench, fixture.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lmmns/bench.hpp"
#include "lmmns/errors.hpp"
#include "lmmns/filling.hpp"
#include "lmmns/fixtures.hpp"
#include "lmmns/json_io.hpp"
#include "lmmns/lmmns.hpp"
#include "lmmns/lp.hpp"
#include "lmmns/properties.hpp"

namespace {

using nlohmann::json;
using namespace lmmns;

enum Exit { kOk = 0, kCheckFailed = 1, kInvalid = 2, kInfeasible = 3, kNoConvergence = 4 };

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << text;
}

Instance load(const std::string& path, const std::string& p, bool renormalize) {
  Instance inst = read_instance(path, InstanceReadOptions{renormalize});
  if (!p.empty()) {
    try {
      inst.norm = NormChoice::parse(p);
    } catch (const std::invalid_argument& e) {
      throw ValidationError(std::string("--p: ") + e.what());
    }
  }
  return inst;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

struct SolveArgs {
  std::string instance;
  std::string mechanism = "lmmns";
  std::string p;
  std::string saturation;
  std::string out;
  bool renormalize = false;
};

int cmd_solve(const SolveArgs& a) {
  const Instance inst = load(a.instance, a.p, a.renormalize);
  std::optional<SaturationRule> rule;
  if (!a.saturation.empty()) rule = parse_saturation(a.saturation);
  json meta = json::object();
  Allocation alloc;
  if (a.mechanism == "welfare-lp" || a.mechanism == "util-lp") {
    const OracleResult r = a.mechanism == "welfare-lp" ? welfare_lp(inst, false)
                                                       : utilization_lp(inst, false);
    alloc = r.allocation;
    meta["objective"] = r.objective;
    meta["certificate_ok"] = r.certificate.ok;
    meta["duality_gap"] = r.certificate.duality_gap;
  } else if (a.mechanism == "ceei") {
    const CeeiResult r = solve_ceei(inst);
    alloc = r.allocation;
    meta["prices"] = r.prices;
    meta["residual"] = r.residual;
    meta["iterations"] = r.iterations;
  } else {
    alloc = solve_named(a.mechanism, inst, rule);
    if (rule) meta["saturation"] = to_string(*rule);
  }
  emit(allocation_to_json(inst, alloc, a.mechanism, meta).dump(2) + "\n", a.out);
  return kOk;
}

struct CheckArgs {
  std::string instance;
  std::string allocation;
  std::string properties = "pe,si,ef,bbf";
  std::string p;
  std::string out;
};

int cmd_check(const CheckArgs& a) {
  const Instance inst = load(a.instance, a.p, false);
  const Allocation alloc = allocation_from_json(inst, read_json_file(a.allocation));
  const auto problems = allocation_violations(inst, alloc, kPropertyTolerance);
  if (!problems.empty()) throw ValidationError("infeasible allocation: " + problems.front());
  json reports = json::array();
  bool all = true;
  for (const auto& name : split(a.properties, ',')) {
    PropertyReport r;
    if (name == "pe") {
      r = check_pe(inst, alloc);
    } else if (name == "si") {
      r = check_si(inst, alloc);
    } else if (name == "ef") {
      r = check_ef(inst, alloc);
    } else if (name == "bbf") {
      r = check_bbf(inst, alloc);
    } else {
      throw ValidationError("unknown property '" + name + "' (expected pe, si, ef, bbf)");
    }
    all = all && r.holds;
    reports.push_back(report_to_json(r));
  }
  emit(reports.dump(2) + "\n", a.out);
  return all ? kOk : kCheckFailed;
}

struct CompareArgs {
  std::string instance;
  std::string p;
  double tol = 1e-6;
};

int cmd_compare(const CompareArgs& a) {
  const Instance inst = load(a.instance, a.p, false);
  const std::vector<std::string> names{"lmmns", "oracle", "waterfill"};
  std::vector<Allocation> results;
  for (const auto& n : names) results.push_back(solve_named(n, inst));
  json out = json::object();
  double worst = 0.0;
  for (std::size_t k = 0; k < names.size(); ++k) {
    out["tasks"][names[k]] = results[k].tasks;
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      const double scale = std::max(1.0, std::abs(results[0].tasks[i]));
      worst = std::max(worst, std::abs(results[k].tasks[i] - results[0].tasks[i]) / scale);
    }
  }
  out["max_relative_difference"] = worst;
  out["agree"] = worst <= a.tol;
  std::cout << out.dump(2) << "\n";
  return worst <= a.tol ? kOk : kCheckFailed;
}

struct GenArgs {
  std::size_t n = 10;
  std::size_t m = 2;
  std::uint64_t seed = 1;
  std::size_t trial = 0;
  std::string p = "inf";
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  GenConfig cfg;
  cfg.n = a.n;
  cfg.m = a.m;
  cfg.seed = a.seed;
  const Instance inst = gen_instance(cfg, a.trial, NormChoice::parse(a.p));
  emit(instance_to_json(inst).dump(2) + "\n", a.out);
  return kOk;
}

struct BenchArgs {
  std::size_t n = 100;
  std::size_t m = 2;
  std::string p_sweep = "inf";
  std::uint64_t seed = 1;
  std::size_t trials = 50;
  std::string objective = "welfare";
  std::string oracle = "plain";
  std::string mechanism = "lmmns";
  std::string csv;
};

int cmd_bench(const BenchArgs& a) {
  GenConfig cfg;
  cfg.n = a.n;
  cfg.m = a.m;
  cfg.seed = a.seed;
  cfg.trials = a.trials;
  cfg.p_values = parse_p_sweep(a.p_sweep);
  const SweepResult result = run_quality_sweep(cfg, parse_mechanism(a.mechanism),
                                               parse_objective(a.objective),
                                               parse_oracle(a.oracle));
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_csv(csv, result.records);
    emit(csv.str(), a.csv);
  }
  std::printf("p,mean,count,excluded\n");
  for (const auto& point : result.means) {
    std::printf("%s,%.6f,%zu,%zu\n", point.p.to_string().c_str(), point.mean, point.count,
                point.excluded);
  }
  return kOk;
}

int cmd_fixture(const std::string& name, const std::string& dir) {
  const std::vector<std::string> names = name.empty() ? fixture_names(dir)
                                                      : std::vector<std::string>{name};
  bool all = true;
  for (const auto& n : names) {
    const Fixture f = load_fixture(n, dir);
    for (const auto& a : f.expected) {
      const AssertionOutcome o = evaluate(f, a);
      all = all && o.passed;
      std::printf("%s %s %s [%s]: %s\n", o.passed ? "PASS" : "FAIL", n.c_str(), a.kind.c_str(),
                  a.mechanism.c_str(), o.message.c_str());
    }
  }
  return all ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-resource fair allocation by lexicographic max-min normalized shares"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Allocate tasks for an instance");
  s->add_option("instance", solve.instance, "Instance JSON")->required();
  s->add_option("--mechanism", solve.mechanism, "Mechanism")
      ->check(CLI::IsMember({"lmmns", "lmmns-general", "oracle", "modified", "waterfill", "ceei",
                             "welfare-lp", "util-lp"}));
  s->add_option("--p", solve.p, "Norm exponent (number >= 1 or inf), overrides the instance");
  s->add_option("--saturation", solve.saturation, "Saturation rule for modified/waterfill")
      ->check(CLI::IsMember({"freeze-all", "freeze-touching"}));
  s->add_option("--out", solve.out, "Output file (default stdout)");
  s->add_flag("--renormalize-weights", solve.renormalize, "Rescale weight columns to sum to 1");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check fairness properties of an allocation");
  c->add_option("instance", check.instance, "Instance JSON")->required();
  c->add_option("allocation", check.allocation, "Allocation JSON")->required();
  c->add_option("--properties", check.properties, "Comma list of pe,si,ef,bbf");
  c->add_option("--p", check.p, "Norm exponent, overrides the instance");
  c->add_option("--out", check.out, "Output file (default stdout)");

  CompareArgs compare;
  auto* cmp = app.add_subcommand("compare", "Cross-check the three LMMNS solvers");
  cmp->add_option("instance", compare.instance, "Instance JSON")->required();
  cmp->add_option("--p", compare.p, "Norm exponent, overrides the instance");
  cmp->add_option("--tol", compare.tol, "Relative agreement tolerance");

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a random instance");
  g->add_option("--n", gen.n, "Users")->check(CLI::PositiveNumber);
  g->add_option("--m", gen.m, "Resources")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--trial", gen.trial, "Trial index");
  g->add_option("--p", gen.p, "Norm recorded in the instance");
  g->add_option("--out", gen.out, "Output file (default stdout)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Quality ratios against LP oracles on random instances");
  b->add_option("--n", bench.n, "Users")->check(CLI::PositiveNumber);
  b->add_option("--m", bench.m, "Resources")->check(CLI::PositiveNumber);
  b->add_option("--p-sweep", bench.p_sweep, "a:b, a:b:step or comma list (inf allowed)");
  b->add_option("--seed", bench.seed, "Seed");
  b->add_option("--trials", bench.trials, "Trials per point")->check(CLI::PositiveNumber);
  b->add_option("--objective", bench.objective, "welfare or utilization")
      ->check(CLI::IsMember({"welfare", "utilization"}));
  b->add_option("--oracle", bench.oracle, "plain or si")->check(CLI::IsMember({"plain", "si"}));
  b->add_option("--mechanism", bench.mechanism, "lmmns, modified, waterfill or ceei")
      ->check(CLI::IsMember({"lmmns", "modified", "waterfill", "ceei"}));
  b->add_option("--csv", bench.csv, "Write per-trial records as CSV");

  std::string fixture_name;
  std::string fixture_dir;
  auto* f = app.add_subcommand("fixture", "Evaluate stored fixtures");
  f->add_option("name", fixture_name, "Fixture name (all when omitted)");
  f->add_option("--dir", fixture_dir, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (s->parsed()) return cmd_solve(solve);
    if (c->parsed()) return cmd_check(check);
    if (cmp->parsed()) return cmd_compare(compare);
    if (g->parsed()) return cmd_gen(gen);
    if (b->parsed()) return cmd_bench(bench);
    if (f->parsed()) return cmd_fixture(fixture_name, fixture_dir);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNoConvergence;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInvalid;
}
