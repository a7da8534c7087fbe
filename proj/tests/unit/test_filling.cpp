#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "lmmns/errors.hpp"
#include "lmmns/filling.hpp"
#include "lmmns/fixtures.hpp"
#include "lmmns/lmmns.hpp"
#include "support/oracles.hpp"

namespace lmmns {
namespace {

Instance make(std::vector<std::vector<double>> demands, std::vector<double> bounds,
              NormChoice norm = NormChoice::infinity()) {
  Instance inst;
  inst.n_users = demands.size();
  inst.n_resources = demands.front().size();
  inst.demands = Matrix::from_rows(demands);
  inst.weights = equal_weights(inst.n_users, inst.n_resources);
  inst.bounds = std::move(bounds);
  inst.norm = norm;
  return inst;
}

Instance table3(NormChoice norm) {
  return make({{1, 1}, {1, 0}, {1, 0}, {0, 1}}, {1, 1, 1, 1}, norm);
}

TEST(Filling, SaturationRuleNames) {
  EXPECT_EQ(parse_saturation("freeze-all"), SaturationRule::kFreezeAll);
  EXPECT_EQ(parse_saturation(to_string(SaturationRule::kFreezeTouching)),
            SaturationRule::kFreezeTouching);
  EXPECT_THROW(parse_saturation("nope"), std::invalid_argument);
}

TEST(Filling, Floors) {
  auto floors = sharing_incentive_floors(table3(NormChoice::infinity()));
  ASSERT_EQ(floors.size(), 4u);
  for (double f : floors) EXPECT_DOUBLE_EQ(f, 0.25);
  Instance inst = make({{0.1, 0.4}, {0.5, 0.2}}, {10, 10});
  floors = sharing_incentive_floors(inst);
  EXPECT_DOUBLE_EQ(floors[0], 0.5 / 0.4);
  EXPECT_DOUBLE_EQ(floors[1], 0.5 / 0.5);
}

TEST(Filling, FloorAboveCapIsInfeasible) {
  Instance inst = make({{0.1, 0.4}, {0.5, 0.2}}, {1.0, 10});  // floor of user 0 is 1.25
  EXPECT_THROW(solve_modified_lmmns(inst), InfeasibleError);
  EXPECT_NO_THROW(solve_waterfilling(inst));
}

TEST(Filling, Table3SingleThreshold) {
  Allocation p1 = solve_modified_lmmns(table3(NormChoice::finite(1)));
  EXPECT_NEAR(p1.tasks[0], 0.25, 1e-9);
  EXPECT_NEAR(p1.utilization(), 0.625, 1e-9);
  Allocation pinf = solve_modified_lmmns(table3(NormChoice::infinity()));
  for (double x : pinf.tasks) EXPECT_NEAR(x, 1.0 / 3, 1e-9);
  EXPECT_NEAR(pinf.utilization(), 2.0 / 3, 1e-9);
}

TEST(Filling, Table3MultiRoundReachesFullUtilization) {
  for (NormChoice p : {NormChoice::finite(1), NormChoice::infinity()}) {
    Allocation a = solve_modified_lmmns(table3(p), SaturationRule::kFreezeTouching);
    EXPECT_NEAR(a.utilization(), 1.0, 1e-9);
    Allocation plain = solve_waterfilling(table3(p));
    EXPECT_NEAR(plain.utilization(), 1.0, 1e-9);
  }
}

TEST(Filling, Sec7Figure4UserZeroFraction) {
  for (std::size_t m : {2u, 3u, 5u}) {
    Allocation l1 = solve_modified_lmmns(sec7_figure4_instance(m, NormChoice::finite(1)));
    Allocation linf = solve_modified_lmmns(sec7_figure4_instance(m, NormChoice::infinity()));
    EXPECT_NEAR(0.5 * l1.tasks[0], 1.0 / (m + 1), 1e-9) << m;
    EXPECT_NEAR(0.5 * linf.tasks[0], 0.5, 1e-9) << m;
  }
}

TEST(Filling, Example1AndSingleUser) {
  Instance ex1 = make({{1.0 / 18, 1.0 / 9}, {1.0 / 6, 1.0 / 36}}, {5, 3});
  Allocation a = solve_waterfilling(ex1);
  EXPECT_NEAR(a.tasks[0], 5, 1e-9);
  EXPECT_NEAR(a.tasks[1], 3, 1e-9);
  EXPECT_NEAR(solve_waterfilling(make({{0.3, 0.2}}, {kUnbounded})).tasks[0], 1 / 0.3, 1e-12);
  EXPECT_NEAR(solve_waterfilling(make({{0.3, 0.2}}, {2})).tasks[0], 2, 1e-12);
}

TEST(Filling, ThreeWayAgreementWithoutFloors) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    testing::RandomSpec spec;
    spec.n = 1 + seed % 12;
    spec.m = 1 + seed % 4;
    spec.zero_probability = seed % 2 ? 0.2 : 0.0;
    spec.norm = seed % 3 ? NormChoice::finite(1.0 + seed % 4) : NormChoice::infinity();
    Instance inst = testing::random_instance(seed, spec);
    FillOptions opts;
    opts.rule = SaturationRule::kFreezeTouching;
    opts.apply_floors = false;
    FillResult filled = fill(inst, opts);
    Allocation water = solve_waterfilling(inst);
    Allocation ref = solve_lmmns_general(inst);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      EXPECT_NEAR(filled.allocation.tasks[i], ref.tasks[i], 1e-6) << seed;
      EXPECT_NEAR(water.tasks[i], ref.tasks[i], 1e-6) << seed;
    }
    EXPECT_LE(filled.events, 2 * inst.n_users + inst.n_resources) << seed;
  }
}

TEST(Filling, ModifiedDominatesFloorsAndLevelMonotone) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    testing::RandomSpec spec;
    spec.n = 2 + seed % 10;
    spec.m = 1 + seed % 3;
    spec.finite_bound_probability = 0.0;
    spec.norm = seed % 2 ? NormChoice::finite(1.0) : NormChoice::infinity();
    Instance inst = testing::random_instance(500 + seed, spec);
    auto floors = sharing_incentive_floors(inst);
    double last = -1.0;
    FillOptions opts;
    opts.observer = [&](const FillEvent& e) {
      EXPECT_GE(e.level, last);
      last = e.level;
    };
    FillResult r = fill(inst, opts);
    EXPECT_TRUE(allocation_violations(inst, r.allocation).empty()) << seed;
    for (std::size_t i = 0; i < inst.n_users; ++i) EXPECT_GE(r.allocation.tasks[i], floors[i] - 1e-9);
    EXPECT_LE(r.events, 2 * inst.n_users + inst.n_resources);
  }
}

}  // namespace
}  // namespace lmmns
