#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "deltalab/errors.hpp"
#include "deltalab/switcher.hpp"

using namespace deltalab;

namespace {

std::vector<CostPair> zip(const std::vector<double>& first, const std::vector<double>& second) {
  std::vector<CostPair> out;
  for (std::size_t i = 0; i < first.size(); ++i) out.push_back({first[i], second[i]});
  return out;
}

// costs_first=[3,3,1,1,1], costs_second=[1,1,3,3,3]
const std::vector<CostPair> kFiveStep = zip({3, 3, 1, 1, 1}, {1, 1, 3, 3, 3});

std::vector<CostPair> random_costs(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> cost(0.0, 10.0);
  std::vector<CostPair> out(n);
  for (auto& c : out) c = {cost(rng), cost(rng)};
  return out;
}

}  // namespace

TEST(ImplSlot, OppositeIsAnInvolution) {
  for (ImplSlot s : {ImplSlot::First, ImplSlot::Second}) {
    EXPECT_NE(opposite(s), s);
    EXPECT_EQ(opposite(opposite(s)), s);
  }
}

TEST(SwitchPolicy, StartsZeroed) {
  const SwitchPolicy a(ImplSlot::First, 4.0);
  EXPECT_EQ(a.active(), ImplSlot::First);
  EXPECT_EQ(a.acc_active(), 0.0);
  EXPECT_EQ(a.acc_passive(), 0.0);
  EXPECT_EQ(a.min_delta(), 0.0);
  EXPECT_EQ(a.step_index(), 0u);

  const SwitchPolicy b(ImplSlot::Second, 6.0);
  EXPECT_EQ(b.active(), ImplSlot::Second);
  EXPECT_EQ(b.round_trip_sc(), 6.0);
}

TEST(SwitchPolicy, RejectsNonPositiveRoundTrip) {
  EXPECT_THROW(SwitchPolicy(ImplSlot::First, 0.0), ValidationError);
  EXPECT_THROW(SwitchPolicy(ImplSlot::First, -1.0), ValidationError);
  EXPECT_THROW(SwitchPolicy(ImplSlot::First, std::numeric_limits<double>::infinity()),
               ValidationError);
  EXPECT_THROW(SwitchPolicy(ImplSlot::First, std::nan("")), ValidationError);
}

TEST(SwitchPolicy, IdenticalStreamsNeverSwitch) {
  SwitchPolicy p(ImplSlot::First, 1e-9);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cost(0.0, 100.0);
  for (int i = 0; i < 10000; ++i) {
    const double c = cost(rng);
    ASSERT_EQ(p.observe({c, c}), Decision::Stay);
    ASSERT_EQ(p.delta(), 0.0);
  }
}

TEST(SwitchPolicy, StaysBelowThreshold) {
  SwitchPolicy p(ImplSlot::First, 6.0);
  EXPECT_EQ(p.observe({3, 1}), Decision::Stay);
  EXPECT_EQ(p.delta(), 2.0);
  EXPECT_EQ(p.observe({3, 1}), Decision::Stay);
  EXPECT_EQ(p.delta(), 4.0);
}

TEST(SwitchPolicy, SwitchesWhenPassiveIsCheaperBySc) {
  SwitchPolicy p(ImplSlot::Second, 6.0);
  EXPECT_EQ(p.observe({0, 5}), Decision::Stay);
  EXPECT_EQ(p.delta(), 5.0);
  EXPECT_EQ(p.observe({0, 5}), Decision::Switch);
  EXPECT_EQ(p.delta(), 10.0);
  // observe never moves the active slot
  EXPECT_EQ(p.active(), ImplSlot::Second);
}

TEST(SwitchPolicy, ThresholdComparisonIsInclusive) {
  SwitchPolicy p(ImplSlot::First, 4.0);
  EXPECT_EQ(p.observe({4, 0}), Decision::Switch);
}

TEST(SwitchPolicy, RejectsInvalidCosts) {
  SwitchPolicy p(ImplSlot::First, 1.0);
  EXPECT_THROW(p.observe({-1, 0}), ValidationError);
  EXPECT_THROW(p.observe({0, std::numeric_limits<double>::infinity()}), ValidationError);
  EXPECT_THROW(p.observe({std::nan(""), 0}), ValidationError);
  EXPECT_EQ(p.step_index(), 0u);
}

TEST(SwitchPolicy, ApplySwitchTogglesAndResets) {
  SwitchPolicy p(ImplSlot::First, 3.0);
  p.observe({5, 1});
  p.observe({0, 2});
  p.apply_switch();
  EXPECT_EQ(p.active(), ImplSlot::Second);
  EXPECT_EQ(p.acc_active(), 0.0);
  EXPECT_EQ(p.acc_passive(), 0.0);
  EXPECT_EQ(p.min_delta(), 0.0);
  EXPECT_EQ(p.observe({2, 2}), Decision::Stay);

  p.apply_switch();
  EXPECT_EQ(p.active(), ImplSlot::First);
  EXPECT_EQ(p.delta(), 0.0);
}

TEST(SwitchPolicy, MinDeltaTracksRunningMinimum) {
  std::mt19937_64 rng(11);
  SwitchPolicy p(ImplSlot::First, 1e6);
  double lowest = 0.0;
  for (const CostPair& c : random_costs(rng, 500)) {
    p.observe(c);
    lowest = std::min(lowest, p.delta());
    ASSERT_LE(p.min_delta(), 0.0);
    ASSERT_LE(p.min_delta(), p.delta());
    ASSERT_EQ(p.min_delta(), lowest);
  }
}

TEST(RunSequence, FiveStepWithoutSwitch) {
  const RunResult r = run_sequence(kFiveStep, ImplSlot::First, {3.0, 3.0});
  EXPECT_TRUE(r.events.empty());
  EXPECT_EQ(r.total_cost, 9.0);
  EXPECT_EQ(r.deltas, (std::vector<double>{2, 4, 2, 0, -2}));
}

TEST(RunSequence, FiveStepWithTwoSwitches) {
  const RunResult r = run_sequence(kFiveStep, ImplSlot::First, {1.5, 1.5});
  ASSERT_EQ(r.events.size(), 2u);
  EXPECT_EQ(r.events[0].step_index, 2u);
  EXPECT_EQ(r.events[0].from, ImplSlot::First);
  EXPECT_EQ(r.events[0].to, ImplSlot::Second);
  EXPECT_EQ(r.events[0].charged_cost, 1.5);
  EXPECT_EQ(r.events[1].step_index, 4u);
  EXPECT_EQ(r.events[1].from, ImplSlot::Second);
  EXPECT_EQ(r.total_cost, 16.0);
  EXPECT_EQ(r.request_cost, 13.0);
  EXPECT_EQ(r.switch_charges, 3.0);
  EXPECT_EQ(r.served_by, (std::vector<ImplSlot>{ImplSlot::First, ImplSlot::First,
                                                ImplSlot::Second, ImplSlot::Second,
                                                ImplSlot::First}));
}

TEST(RunSequence, ChargesAreDirectionalThresholdIsRoundTrip) {
  // round trip 3 decides exactly as above, but only First->Second is charged
  const RunResult r = run_sequence(kFiveStep, ImplSlot::First, {3.0, 0.0});
  ASSERT_EQ(r.events.size(), 2u);
  EXPECT_EQ(r.events[0].charged_cost, 3.0);
  EXPECT_EQ(r.events[1].charged_cost, 0.0);
  EXPECT_EQ(r.total_cost, 16.0);
}

TEST(RunSequence, UnreachableThresholdMeansNoSwitch) {
  std::mt19937_64 rng(3);
  const auto costs = random_costs(rng, 200);
  double spread = 0.0;
  for (const auto& c : costs) spread += std::abs(c.cost_first - c.cost_second);
  EXPECT_TRUE(run_sequence(costs, ImplSlot::First, {spread + 1.0, 0.0}).events.empty());
}

TEST(RunSequence, RejectsZeroRoundTrip) {
  EXPECT_THROW(run_sequence(kFiveStep, ImplSlot::First, {0.0, 0.0}), ValidationError);
}

TEST(WindowCertificate, FiveStepEvents) {
  const RunResult r = run_sequence(kFiveStep, ImplSlot::First, {1.5, 1.5});
  EXPECT_EQ(window_certificate(kFiveStep, r.events, 0, 3.0), 1u);
  EXPECT_EQ(window_certificate(kFiveStep, r.events, 1, 3.0), 3u);
}

TEST(WindowCertificate, SingleRequestWindow) {
  const std::vector<CostPair> costs{{10, 1}};
  const RunResult r = run_sequence(costs, ImplSlot::First, {5.0, 0.0});
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(window_certificate(costs, r.events, 0, 5.0), 1u);
}

TEST(WindowCertificate, FailsLoudlyOnForgedEvent) {
  const std::vector<SwitchEvent> forged{{3, std::nullopt, ImplSlot::First, ImplSlot::Second, 1}};
  EXPECT_THROW(window_certificate(kFiveStep, forged, 0, 100.0), InvariantViolation);
}

// Randomized properties of the policy over many sequences.
TEST(RunSequenceProperty, EventsCarryCertificatesAndBoundedOvershoot) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> sc_dist(0.5, 20.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto costs = random_costs(rng, 80);
    const SwitchCosts sc{sc_dist(rng), sc_dist(rng) * 0.3};
    const RunResult r = run_sequence(costs, ImplSlot::First, sc);

    // replay step by step to see delta - min_delta at each trigger
    SwitchPolicy p(ImplSlot::First, sc.round_trip());
    std::size_t e = 0;
    double prev_delta = 0.0;
    for (std::size_t k = 0; k < costs.size(); ++k) {
      const Decision d = p.observe(costs[k]);
      const double step = p.delta() - prev_delta;
      prev_delta = p.delta();
      if (d == Decision::Switch) {
        ASSERT_LT(e, r.events.size());
        ASSERT_EQ(r.events[e].step_index, k + 1);
        const double gap = p.delta() - p.min_delta();
        EXPECT_GE(gap, sc.round_trip());
        EXPECT_LT(gap, sc.round_trip() + step);
        const std::size_t j = window_certificate(costs, r.events, e, sc.round_trip());
        EXPECT_GE(j, e == 0 ? 1u : r.events[e - 1].step_index + 1);
        EXPECT_LE(j, k + 1);
        p.apply_switch();
        prev_delta = 0.0;
        ++e;
      }
    }
    EXPECT_EQ(e, r.events.size());
  }
}

TEST(RunSequenceProperty, DeterministicAndMirrored) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto costs = random_costs(rng, 60);
    std::vector<CostPair> swapped;
    for (const auto& c : costs) swapped.push_back({c.cost_second, c.cost_first});
    const SwitchCosts sc{4.0, 4.0};

    const RunResult a = run_sequence(costs, ImplSlot::First, sc);
    const RunResult again = run_sequence(costs, ImplSlot::First, sc);
    const RunResult mirror = run_sequence(swapped, ImplSlot::Second, sc);
    EXPECT_EQ(a.total_cost, again.total_cost);
    EXPECT_EQ(a.deltas, again.deltas);
    ASSERT_EQ(a.events.size(), mirror.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
      EXPECT_EQ(a.events[i].step_index, mirror.events[i].step_index);
      EXPECT_EQ(mirror.events[i].from, opposite(a.events[i].from));
    }
    EXPECT_EQ(a.total_cost, mirror.total_cost);
  }
}
