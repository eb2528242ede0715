#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "deltalab/errors.hpp"
#include "deltalab/oracle.hpp"
#include "deltalab/switcher.hpp"

using namespace deltalab;

namespace {

const std::vector<CostPair> kFiveStep{{3, 1}, {3, 1}, {1, 3}, {1, 3}, {1, 3}};

double schedule_cost(const std::vector<CostPair>& costs, const std::vector<ImplSlot>& sched,
                     double sc_12, double sc_21, ImplSlot start) {
  double total = 0;
  ImplSlot cur = start;
  for (std::size_t k = 0; k < costs.size(); ++k) {
    if (sched[k] != cur) total += cur == ImplSlot::First ? sc_12 : sc_21;
    cur = sched[k];
    total += costs[k].cost_of(cur);
  }
  return total;
}

}  // namespace

TEST(OptDp, FiveStepExample) {
  const OptResult r = opt_dp(kFiveStep, 3, 3, ImplSlot::First);
  EXPECT_EQ(r.opt_cost, 9.0);
  EXPECT_EQ(r.switch_count, 0u);
  EXPECT_EQ(r.schedule, std::vector<ImplSlot>(5, ImplSlot::First));
}

TEST(OptDp, FreeSwitchingTakesCheaperSide) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> c(0, 10);
  std::vector<CostPair> costs(50);
  double expected = 0;
  for (auto& p : costs) {
    p = {c(rng), c(rng)};
    expected += std::min(p.cost_first, p.cost_second);
  }
  EXPECT_NEAR(opt_dp(costs, 0, 0, ImplSlot::Second).opt_cost, expected, 1e-12);
}

TEST(OptDp, SwitchDearerThanSaving) {
  const std::vector<CostPair> one{{5, 1}};
  const OptResult r = opt_dp(one, 10, 0, ImplSlot::First);
  EXPECT_EQ(r.opt_cost, 5.0);
  EXPECT_EQ(r.switch_count, 0u);
  // but worth it when cheap, even before the very first request
  const OptResult cheap = opt_dp(one, 1, 0, ImplSlot::First);
  EXPECT_EQ(cheap.opt_cost, 2.0);
  EXPECT_EQ(cheap.schedule.front(), ImplSlot::Second);
}

TEST(OptDp, TiesPreferFewerSwitches) {
  // switching saves exactly its cost: staying wins the tie
  const std::vector<CostPair> costs{{4, 1}};
  const OptResult r = opt_dp(costs, 3, 3, ImplSlot::First);
  EXPECT_EQ(r.opt_cost, 4.0);
  EXPECT_EQ(r.switch_count, 0u);
}

TEST(OptDp, EmptySequence) {
  const OptResult r = opt_dp({}, 1, 1, ImplSlot::First);
  EXPECT_EQ(r.opt_cost, 0.0);
  EXPECT_TRUE(r.schedule.empty());
}

TEST(OptDp, RejectsNegativeInputs) {
  EXPECT_THROW(opt_dp(kFiveStep, -1, 0, ImplSlot::First), ValidationError);
  const std::vector<CostPair> bad{{-1, 0}};
  EXPECT_THROW(opt_dp(bad, 1, 1, ImplSlot::First), ValidationError);
}

TEST(OptBruteForce, MatchesDpOnSmallCases) {
  const OptResult bf = opt_bruteforce(kFiveStep, 3, 3, ImplSlot::First);
  EXPECT_EQ(bf.opt_cost, 9.0);
  const std::vector<CostPair> one{{5, 1}};
  for (double sc : {0.0, 1.0, 4.0, 10.0}) {
    for (ImplSlot s : {ImplSlot::First, ImplSlot::Second}) {
      EXPECT_EQ(opt_bruteforce(one, sc, sc, s).opt_cost, opt_dp(one, sc, sc, s).opt_cost);
    }
  }
  EXPECT_THROW(opt_bruteforce(std::vector<CostPair>(21, {1, 1}), 1, 1, ImplSlot::First),
               ValidationError);
}

TEST(OptProperty, DpEqualsBruteForceAndBoundsDeltaAlgorithm) {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> len(1, 12);
  std::uniform_real_distribution<double> c(0, 10), s(0, 5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<CostPair> costs(static_cast<std::size_t>(len(rng)));
    for (auto& p : costs) p = {c(rng), c(rng)};
    const double sc_12 = s(rng), sc_21 = s(rng);
    const ImplSlot start = trial % 2 ? ImplSlot::First : ImplSlot::Second;

    const OptResult dp = opt_dp(costs, sc_12, sc_21, start);
    const OptResult bf = opt_bruteforce(costs, sc_12, sc_21, start);
    ASSERT_EQ(dp.opt_cost, bf.opt_cost) << "trial " << trial;
    ASSERT_EQ(dp.switch_count, bf.switch_count);
    EXPECT_NEAR(schedule_cost(costs, dp.schedule, sc_12, sc_21, start), dp.opt_cost, 1e-12);

    if (sc_12 + sc_21 > 0) {
      const RunResult alg = run_sequence(costs, start, {sc_12, sc_21});
      ASSERT_LE(dp.opt_cost, alg.total_cost) << "trial " << trial;
    }
  }
}

TEST(OptProperty, MonotoneInSwitchCost) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> c(0, 10), s(0, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<CostPair> costs(40);
    for (auto& p : costs) p = {c(rng), c(rng)};
    const double a = s(rng), b = s(rng);
    const double base = opt_dp(costs, a, b, ImplSlot::First).opt_cost;
    EXPECT_LE(base, opt_dp(costs, a + s(rng), b, ImplSlot::First).opt_cost);
    EXPECT_LE(base, opt_dp(costs, a, b + s(rng), ImplSlot::First).opt_cost);
  }
}

TEST(CompetitiveReport, Ratios) {
  OptResult opt;
  opt.opt_cost = 9;
  EXPECT_EQ(competitive_report(18, opt), 2.0);
  EXPECT_EQ(competitive_report(9, opt), 1.0);
  opt.opt_cost = 0;
  EXPECT_EQ(competitive_report(0, opt), 1.0);
  EXPECT_TRUE(std::isinf(competitive_report(1, opt)));

  const RunResult alg = run_sequence(kFiveStep, ImplSlot::First, {3, 3});
  EXPECT_EQ(alg.total_cost, 9.0);
  EXPECT_EQ(competitive_report(alg.total_cost, opt_dp(kFiveStep, 3, 3, ImplSlot::First)), 1.0);
}
