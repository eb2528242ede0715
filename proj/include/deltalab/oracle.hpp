#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "deltalab/switcher.hpp"

namespace deltalab {

/// Offline-optimal schedule for a fixed start slot. Among schedules of equal
/// cost the one with fewer switches wins.
struct OptResult {
  double opt_cost = 0.0;
  std::vector<ImplSlot> schedule;  // slot serving each request
  std::size_t switch_count = 0;
};

/// Two-state dynamic program over the request sequence. A switch may happen
/// before any request, including the first.
OptResult opt_dp(std::span<const CostPair> costs, double sc_12, double sc_21, ImplSlot start);

inline constexpr std::size_t kBruteForceLimit = 20;

/// Enumerates all 2^n schedules; n must not exceed kBruteForceLimit.
OptResult opt_bruteforce(std::span<const CostPair> costs, double sc_12, double sc_21,
                         ImplSlot start);

/// alg_cost / opt_cost; infinity when only OPT is free, 1 when both are.
double competitive_report(double alg_cost, const OptResult& opt);

}  // namespace deltalab
