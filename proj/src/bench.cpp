#include "lmmns/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lmmns/errors.hpp"
#include "lmmns/filling.hpp"
#include "lmmns/lmmns.hpp"
#include "lmmns/lp.hpp"

namespace lmmns {

void GenConfig::check() const {
  if (n == 0 || m == 0) throw std::invalid_argument("n and m must be positive");
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (p_values.empty()) throw std::invalid_argument("empty p sweep");
}

Instance gen_instance(const GenConfig& cfg, std::size_t trial, NormChoice norm) {
  cfg.check();
  const StreamRng rng(cfg.seed);
  Instance inst;
  inst.n_users = cfg.n;
  inst.n_resources = cfg.m;
  inst.demands = Matrix(cfg.n, cfg.m);
  inst.weights = equal_weights(cfg.n, cfg.m);
  inst.bounds.resize(cfg.n);
  inst.norm = norm;
  const double n = static_cast<double>(cfg.n);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    double top = 0.0;
    for (std::uint64_t attempt = 0; top < kNearZeroDemand; ++attempt) {
      top = 0.0;
      for (std::size_t j = 0; j < cfg.m; ++j) {
        inst.demands(i, j) = rng.uniform(trial, i, j, StreamRng::Stream::kDemand, attempt);
        top = std::max(top, inst.demands(i, j));
      }
    }
    const double lo = 1.0 / (n * top);
    const double hi = 1.0 / top;
    inst.bounds[i] = lo + rng.uniform(trial, i, 0, StreamRng::Stream::kBound) * (hi - lo);
  }
  return inst;
}

const char* to_string(MechanismId id) {
  switch (id) {
    case MechanismId::kLmmns: return "lmmns";
    case MechanismId::kModified: return "modified";
    case MechanismId::kWaterfill: return "waterfill";
    case MechanismId::kCeei: return "ceei";
  }
  return "?";
}

const char* to_string(Objective objective) {
  return objective == Objective::kWelfare ? "welfare" : "utilization";
}

const char* to_string(OracleVariant variant) {
  return variant == OracleVariant::kPlain ? "plain" : "si";
}

MechanismId parse_mechanism(const std::string& text) {
  for (auto id : {MechanismId::kLmmns, MechanismId::kModified, MechanismId::kWaterfill,
                  MechanismId::kCeei}) {
    if (text == to_string(id)) return id;
  }
  throw std::invalid_argument("unknown mechanism '" + text + "'");
}

Objective parse_objective(const std::string& text) {
  if (text == "welfare") return Objective::kWelfare;
  if (text == "utilization") return Objective::kUtilization;
  throw std::invalid_argument("unknown objective '" + text + "'");
}

OracleVariant parse_oracle(const std::string& text) {
  if (text == "plain") return OracleVariant::kPlain;
  if (text == "si") return OracleVariant::kSharingIncentive;
  throw std::invalid_argument("unknown oracle variant '" + text + "'");
}

Allocation run_mechanism(MechanismId id, const Instance& inst) {
  switch (id) {
    case MechanismId::kLmmns:
      return inst.has_zero_demand() ? solve_lmmns_general(inst) : solve_lmmns(inst);
    case MechanismId::kModified: return solve_modified_lmmns(inst);
    case MechanismId::kWaterfill: return solve_waterfilling(inst);
    case MechanismId::kCeei: return solve_ceei(inst).allocation;
  }
  throw std::invalid_argument("unknown mechanism");
}

double objective_value(const Allocation& alloc, Objective objective) {
  return objective == Objective::kWelfare ? alloc.welfare() : alloc.utilization();
}

SweepResult run_quality_sweep(const GenConfig& cfg, MechanismId mechanism, Objective objective,
                              OracleVariant oracle) {
  cfg.check();
  SweepResult out;
  std::vector<double> sums(cfg.p_values.size(), 0.0);
  out.means.resize(cfg.p_values.size());
  for (std::size_t k = 0; k < cfg.p_values.size(); ++k) out.means[k].p = cfg.p_values[k];

  const bool si = oracle == OracleVariant::kSharingIncentive;
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const Instance base = gen_instance(cfg, trial);
    double best = 0.0;
    try {
      best = objective == Objective::kWelfare ? welfare_lp(base, si).objective
                                              : utilization_lp(base, si).objective;
    } catch (const InfeasibleError&) {
      for (auto& point : out.means) ++point.excluded;
      continue;
    }
    for (std::size_t k = 0; k < cfg.p_values.size(); ++k) {
      const Instance inst = with_norm(base, cfg.p_values[k]);
      const double got = objective_value(run_mechanism(mechanism, inst), objective);
      QualityRecord rec{mechanism, objective, oracle, cfg.n, cfg.m, cfg.p_values[k], cfg.seed,
                        trial, best > 0.0 ? got / best : 1.0};
      sums[k] += rec.ratio;
      ++out.means[k].count;
      out.records.push_back(rec);
    }
  }
  for (std::size_t k = 0; k < sums.size(); ++k) {
    if (out.means[k].count > 0) out.means[k].mean = sums[k] / out.means[k].count;
  }
  return out;
}

std::vector<NormChoice> parse_p_sweep(const std::string& text) {
  std::vector<NormChoice> out;
  if (text.empty()) throw std::invalid_argument("empty p sweep");
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("p sweep range must be a:b or a:b:step");
    }
    const double a = std::stod(parts[0]);
    const double b = std::stod(parts[1]);
    const double step = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
    if (!(step > 0.0) || b < a) throw std::invalid_argument("bad p sweep range '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) {
      out.push_back(NormChoice::finite(a + static_cast<double>(k) * step));
    }
    return out;
  }
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(NormChoice::parse(part));
  return out;
}

void write_csv(std::ostream& out, const std::vector<QualityRecord>& records) {
  out << kCsvHeader << '\n';
  char ratio[64];
  for (const auto& r : records) {
    std::snprintf(ratio, sizeof ratio, "%.17g", r.ratio);
    out << to_string(r.mechanism) << ',' << to_string(r.objective) << ',' << to_string(r.oracle)
        << ',' << r.n << ',' << r.m << ',' << r.p.to_string() << ',' << r.seed << ',' << r.trial
        << ',' << ratio << '\n';
  }
}

}  // namespace lmmns
