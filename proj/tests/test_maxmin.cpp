#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "oracles.hpp"
#include "secjam/asymptotic.hpp"
#include "secjam/fixtures.hpp"
#include "secjam/harness.hpp"
#include "secjam/maxmin.hpp"

using namespace secjam;

namespace {

constexpr JammerPolicy kPolicies[] = {JammerPolicy::Pfa,   JammerPolicy::Oda,
                                      JammerPolicy::Pfaso, JammerPolicy::Odaso,
                                      JammerPolicy::Equal, JammerPolicy::None};

ScenarioConfig fixture_config(double ps, double pj) {
  ScenarioConfig cfg;
  cfg.num_users = 3;
  cfg.num_subcarriers = 5;
  cfg.source_budget = ps;
  cfg.jammer_budget = pj;
  return cfg;
}

// u3 has tiny source gains and large jammer gains everywhere.
ChannelRealization dominated_fixture() {
  auto ch = example3x5();
  ChannelRealization out{Matrix(4, 5), Matrix(4, 5), 1.0};
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 5; ++n) {
      out.h(m, n) = ch.h(m, n);
      out.g(m, n) = ch.g(m, n);
    }
  for (std::size_t n = 0; n < 5; ++n) {
    out.h(3, n) = 1e-3;
    out.g(3, n) = 50.0;
  }
  return out;
}

}  // namespace

TEST(MaxMin, FixtureSets) {
  const auto ch = example3x5();
  const auto s = init_fairness_state(ch, fixture_config(10.0, 10.0), JammerPolicy::Pfa);
  EXPECT_TRUE(s.best[1].empty());
  const auto& su2 = s.snatch[1];
  EXPECT_TRUE(std::any_of(su2.begin(), su2.end(), [](const auto& c) { return c.subcarrier == 3; }));
  EXPECT_TRUE(init_fairness_state(ch, fixture_config(10.0, 0.0), JammerPolicy::Pfa).snatch[1].empty());
  EXPECT_TRUE(init_fairness_state(ch, fixture_config(10.0, 10.0), JammerPolicy::None).snatch[1].empty());
}

TEST(MaxMin, PfaSnatchesForTheUserWithoutBestSubcarriers) {
  const auto ch = example3x5();
  const auto cfg = fixture_config(10.0, 10.0);
  const auto out = maxmin(ch, cfg, JammerPolicy::Pfa);
  ASSERT_TRUE(out.allocation.owner[3].has_value());
  EXPECT_EQ(*out.allocation.owner[3], 1u);
  EXPECT_TRUE(out.allocation.jammer_active[3]);
  EXPECT_GT(out.user_rates[1], 0.0);
  EXPECT_EQ(check_allocation(out.allocation, 3, 10.0, 10.0), "");
}

TEST(MaxMin, NoJammerBudgetExitsGracefully) {
  const auto ch = example3x5();
  for (auto p : kPolicies) {
    const auto out = maxmin(ch, fixture_config(10.0, 0.0), p);
    EXPECT_EQ(out.user_rates[1], 0.0) << to_string(p);
    EXPECT_EQ(out.allocation.jammer_total(), 0.0);
    EXPECT_LE(out.iterations.maxmin_iterations, 3 + 5);
  }
}

TEST(MaxMin, DominatedUserTerminates) {
  const auto ch = dominated_fixture();
  ScenarioConfig cfg = fixture_config(10.0, 10.0);
  cfg.num_users = 4;
  for (auto p : kPolicies) {
    const auto out = maxmin(ch, cfg, p);
    EXPECT_LE(out.iterations.maxmin_iterations, 4 + 5) << to_string(p);
    EXPECT_EQ(out.user_rates[3], 0.0);
    EXPECT_EQ(check_allocation(out.allocation, 4, 10.0, 10.0), "");
  }
}

TEST(MaxMin, RandomInstancesTerminateWithValidAllocations) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ScenarioConfig cfg;
    cfg.num_users = 4;
    cfg.num_subcarriers = 8;
    cfg.source_budget = db_to_power(15.0, 1.0);
    cfg.jammer_budget = db_to_power(10.0, 1.0);
    cfg.rng_seed = seed;
    const auto ch = generate_channels(cfg);
    for (auto p : kPolicies) {
      const auto out = maxmin(ch, cfg, p);
      EXPECT_LE(out.iterations.maxmin_iterations, 4 + 8);
      EXPECT_EQ(check_allocation(out.allocation, 4, cfg.source_budget, cfg.jammer_budget), "")
          << to_string(p) << " seed " << seed;
      EXPECT_NEAR(out.sum_weighted_rate, oracle::weighted_sum(ch, out.allocation), 1e-9);
    }
  }
}

TEST(MaxMin, OdaLeftoverAccounting) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ScenarioConfig cfg;
    cfg.num_users = 6;
    cfg.num_subcarriers = 16;
    cfg.source_budget = db_to_power(20.0, 1.0);
    cfg.jammer_budget = db_to_power(8.0, 1.0);
    cfg.rng_seed = seed;
    const auto ch = generate_channels(cfg);
    auto s = init_fairness_state(ch, cfg, JammerPolicy::Oda);
    const auto out = maxmin_loop(s, JammerPolicy::Oda, ch, cfg);
    const double committed = std::accumulate(s.committed.begin(), s.committed.end(), 0.0);
    EXPECT_NEAR(committed, out.allocation.jammer_total(), 1e-9 * cfg.jammer_budget);
    EXPECT_LE(committed + s.pj_leftover, cfg.jammer_budget * (1.0 + 1e-9));
  }
}

TEST(MaxMin, OdasoCommitsClampedOptimum) {
  const auto ch = example3x5();
  const auto cfg = fixture_config(10.0, 10.0);
  const auto out = maxmin(ch, cfg, JammerPolicy::Odaso);
  ASSERT_TRUE(out.allocation.jammer_active[3]);
  const Carrier k = make_carrier(3, 1, 2, ch, 1.0);
  EXPECT_NEAR(out.allocation.pj[3], clamped_optimal_pj(k, 2.0), 1e-12);
}

TEST(MaxMin, BudgetChecks) {
  const auto ch = example3x5();
  auto s = init_fairness_state(ch, fixture_config(10.0, 10.0), JammerPolicy::Pfa);
  SnatchCandidate c;
  c.subcarrier = 3;
  c.best_user = 2;
  c.bounds = identity_bounds(1, 2, 3, ch);
  EXPECT_TRUE(pfa_budget_check(c, s));
  s.pj_equal = 0.1;  // below the snatch threshold 0.1138
  EXPECT_FALSE(pfa_budget_check(c, s));
  EXPECT_TRUE(oda_budget_policy(1, c, s, ch));
  s.pj_leftover = 0.5;  // below P_j^* = 0.9587
  EXPECT_FALSE(oda_budget_policy(1, c, s, ch));
}

TEST(MaxMin, UpperBoundDominatesOda) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ScenarioConfig cfg;
    cfg.num_users = 4;
    cfg.num_subcarriers = 12;
    cfg.source_budget = db_to_power(20.0, 1.0);
    cfg.jammer_budget = db_to_power(5.0, 1.0);
    cfg.rng_seed = seed;
    const auto ch = generate_channels(cfg);
    const auto oda = maxmin(ch, cfg, JammerPolicy::Oda);
    const auto ub = maxmin_upper_bound(ch, cfg);
    const auto min_of = [](const auto& r) { return *std::min_element(r.begin(), r.end()); };
    EXPECT_GE(min_of(ub.user_rates), min_of(oda.user_rates) - 1e-9) << "seed " << seed;
  }
}
