#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lmmns/lmmns.hpp"
#include "lmmns/norms.hpp"
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

void expect_tasks(const Allocation& a, const std::vector<double>& want, double tol) {
  ASSERT_EQ(a.tasks.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(a.tasks[i], want[i], tol) << i;
}

TEST(MedianSelect, Small) {
  std::vector<double> v{3, 1, 2};
  EXPECT_EQ(median_select(v, 2), 2.0);
  EXPECT_EQ(median_select(v, 1), 1.0);
  EXPECT_EQ(median_select(v, 3), 3.0);
  EXPECT_THROW(median_select(v, 0), std::out_of_range);
  EXPECT_THROW(median_select(v, 4), std::out_of_range);
  EXPECT_THROW(median_select(std::vector<double>{}, 1), std::out_of_range);
}

TEST(MedianSelect, AgreesWithSort) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<double> v(5000);
  for (double& x : v) x = u(rng);
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k : {1u, 2u, 17u, 2500u, 4999u, 5000u}) EXPECT_EQ(median_select(v, k), sorted[k - 1]);
  // heavy duplicates
  std::uniform_int_distribution<int> d(0, 4);
  for (double& x : v) x = d(rng);
  sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k <= v.size(); k += 97) EXPECT_EQ(median_select(v, k), sorted[k - 1]);
}

TEST(MedianSelect, AllEqual) {
  std::vector<double> v(101, 4.25);
  for (std::size_t k = 1; k <= v.size(); k += 10) EXPECT_EQ(median_select(v, k), 4.25);
}

TEST(Lmmns, Example1Bounded) {
  Instance inst = make({{1.0 / 18, 1.0 / 9}, {1.0 / 6, 1.0 / 36}}, {5, 3});
  expect_tasks(solve_lmmns(inst), {5, 3}, 1e-9);
  expect_tasks(oracle_binary_search(inst), {5, 3}, 1e-9);
}

TEST(Lmmns, SingleUser) {
  expect_tasks(solve_lmmns(make({{0.2, 0.1}}, {4})), {4}, 1e-12);
  expect_tasks(solve_lmmns(make({{0.2, 0.1}}, {kUnbounded})), {5}, 1e-12);
}

TEST(Lmmns, Table1AllNorms) {
  Instance inst = make({{0.1, 0.0}, {0.0, 0.1}, {0.1, 0.1}}, {10, 5, 10});
  EXPECT_THROW(solve_lmmns(inst), std::invalid_argument);
  for (NormChoice p : {NormChoice::finite(1), NormChoice::finite(2), NormChoice::infinity()}) {
    Allocation a = solve_lmmns_general(with_norm(inst, p));
    EXPECT_NEAR(a.welfare(), 15.0, 1e-9);
  }
  expect_tasks(solve_lmmns_general(inst), {5, 5, 5}, 1e-9);
}

TEST(Lmmns, Table2Saturation) {
  Instance inst = make({{0.45, 0.05}, {0.25, 0.25}, {0.2, 0.3}, {0.1, 0.4}}, {10, 10, 10, 10});
  Allocation l1 = solve_lmmns_general(with_norm(inst, NormChoice::finite(1)));
  EXPECT_NEAR(l1.consumption[0], 1.0, 1e-9);
  EXPECT_NEAR(l1.consumption[1], 1.0, 1e-9);
  Allocation linf = solve_lmmns_general(inst);
  EXPECT_LT(linf.consumption[0], 1.0 - 1e-3);
  EXPECT_NEAR(linf.consumption[1], 1.0, 1e-9);
}

TEST(Lmmns, Theorem1RatioTendsToPower) {
  for (double p : {1.0, 2.0, 3.0}) {
    Instance inst = make({{0.5, 0.5}, {0.5, 1e-9}}, {1e9, 1e9}, NormChoice::finite(p));
    Allocation a = solve_lmmns(inst);
    EXPECT_NEAR(a.tasks[0] / a.tasks[1], std::pow(2.0, -1.0 / p), 1e-6) << p;
  }
}

TEST(ClosedForm, Theorem1P1) {
  Instance inst = make({{1.0, 1.0}, {1.0, 0.0}}, {1e9, 1e9}, NormChoice::finite(1));
  std::vector<std::size_t> dummy{0, 1};
  auto ns = closed_form_ns(inst, dummy, {});
  ASSERT_TRUE(ns.has_value());
  EXPECT_NEAR(*ns / weighted_shares(inst).norm_per_task[0], 1.0 / 3, 1e-12);
}

TEST(ClosedForm, ExhaustedCapacityGivesZero) {
  Instance inst = make({{0.5, 0.5}, {0.5, 0.25}}, {2, 10});
  std::vector<std::size_t> capped{0};
  std::vector<std::size_t> dummy{1};
  auto ns = closed_form_ns(inst, dummy, capped);
  ASSERT_TRUE(ns.has_value());
  EXPECT_EQ(*ns, 0.0);
}

TEST(ClosedForm, UnconstrainedAndBadSets) {
  Instance inst = make({{0.5, 0.0}, {0.0, 0.5}}, {2, 10});
  std::vector<std::size_t> capped{0};
  std::vector<std::size_t> dummy{1};
  EXPECT_TRUE(closed_form_ns(inst, dummy, capped).has_value());
  EXPECT_THROW(closed_form_ns(inst, {}, capped), std::invalid_argument);
  std::vector<std::size_t> both{0};
  EXPECT_THROW(closed_form_ns(inst, both, both), std::invalid_argument);
}

TEST(ClosedForm, Table1FinalRoundMatchesOracle) {
  // user 2 alone in the dummy set once users 0 and 1 are capped at x = 5
  Instance inst = make({{0.1, 0.0}, {0.0, 0.1}, {0.1, 0.1}}, {5, 5, 10});
  std::vector<std::size_t> capped{0, 1};
  std::vector<std::size_t> dummy{2};
  auto ns = closed_form_ns(inst, dummy, capped);
  ASSERT_TRUE(ns.has_value());
  Allocation ref = oracle_binary_search(make({{0.1, 0.0}, {0.0, 0.1}, {0.1, 0.1}}, {10, 5, 10}));
  EXPECT_NEAR(*ns, ref.normalized_shares[2], 1e-9);
}

TEST(Lmmns, ObserverInvariants) {
  testing::RandomSpec spec;
  spec.n = 40;
  spec.m = 3;
  Instance inst = testing::random_instance(5, spec);
  std::vector<double> last_mu(spec.m, 0.0);
  std::size_t steps = 0;
  solve_lmmns(inst, [&](const SolverState& s) {
    ++steps;
    EXPECT_EQ(s.active_users.size() + s.dummy_set.size() + s.resolved.size(), spec.n);
    std::vector<std::size_t> all;
    for (auto* v : {&s.active_users, &s.dummy_set, &s.resolved}) all.insert(all.end(), v->begin(), v->end());
    std::sort(all.begin(), all.end());
    EXPECT_TRUE(std::adjacent_find(all.begin(), all.end()) == all.end());
    for (std::size_t j = 0; j < spec.m; ++j) {
      EXPECT_GE(s.remaining_capacity[j], -1e-12);
      EXPECT_LE(s.remaining_capacity[j], 1.0 + 1e-12);
      EXPECT_GE(s.mu[j], last_mu[j]);
      last_mu[j] = s.mu[j];
    }
  });
  EXPECT_GT(steps, 0u);
}

TEST(Lmmns, StructureDominanceMaximality) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    testing::RandomSpec spec;
    spec.n = 2 + seed % 20;
    spec.m = 1 + seed % 4;
    spec.norm = seed % 3 == 0 ? NormChoice::infinity() : NormChoice::finite(1.0 + seed % 5);
    Instance inst = testing::random_instance(seed, spec);
    Allocation a = solve_lmmns(inst);
    EXPECT_TRUE(allocation_violations(inst, a).empty()) << seed;
    ShareProfile s = weighted_shares(inst);
    double ns_star = 0.0;
    bool any_uncapped = false;
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      if (a.tasks[i] < inst.bounds[i] - 1e-9) {
        any_uncapped = true;
        ns_star = std::max(ns_star, a.normalized_shares[i]);
      }
    }
    if (!any_uncapped) continue;
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      EXPECT_NEAR(a.normalized_shares[i], std::min(s.ns_max[i], ns_star), 1e-9 * (1 + ns_star));
    }
    EXPECT_GE(*std::max_element(a.consumption.begin(), a.consumption.end()), 1.0 - 1e-9) << seed;
  }
}

TEST(Lmmns, OracleAgreementWithZeros) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    testing::RandomSpec spec;
    spec.n = 1 + seed % 15;
    spec.m = 1 + seed % 5;
    spec.zero_probability = 0.25;
    spec.norm = seed % 2 ? NormChoice::infinity() : NormChoice::finite(2.0);
    Instance inst = testing::random_instance(1000 + seed, spec);
    Allocation a = solve_lmmns_general(inst);
    Allocation b = oracle_binary_search(inst);
    for (std::size_t i = 0; i < inst.n_users; ++i) {
      EXPECT_NEAR(a.normalized_shares[i], b.normalized_shares[i], 1e-6) << seed;
    }
  }
}

TEST(Lmmns, OracleRejectsBadTolerance) {
  Instance inst = make({{0.5}}, {1});
  EXPECT_THROW(oracle_binary_search(inst, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace lmmns
