#include "deltalab/oracle.hpp"

#include <array>
#include <cstdint>
#include <cmath>
#include <limits>
#include <string>

#include "deltalab/errors.hpp"

namespace deltalab {

namespace {

// Cost first, switch count second; both add along a path, so the
// lexicographic minimum is found by the DP exactly.
struct Score {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t switches = 0;

  friend bool operator<(const Score& a, const Score& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.switches < b.switches;
  }
};

void validate_inputs(std::span<const CostPair> costs, double sc_12, double sc_21) {
  if (!std::isfinite(sc_12) || !std::isfinite(sc_21) || sc_12 < 0.0 || sc_21 < 0.0) {
    throw ValidationError("switching costs must be finite and non-negative");
  }
  for (const CostPair& c : costs) validate(c);
}

std::size_t index(ImplSlot s) { return s == ImplSlot::First ? 0 : 1; }
ImplSlot slot(std::size_t i) { return i == 0 ? ImplSlot::First : ImplSlot::Second; }

}  // namespace

OptResult opt_dp(std::span<const CostPair> costs, double sc_12, double sc_21, ImplSlot start) {
  validate_inputs(costs, sc_12, sc_21);
  OptResult out;
  if (costs.empty()) return out;

  const std::array<double, 2> charge{sc_12, sc_21};  // leaving First, leaving Second
  const std::size_t n = costs.size();
  std::array<Score, 2> prev;
  prev[index(start)] = Score{0.0, 0};
  // came_from[k][s]: slot before request k when request k is served by s
  std::vector<std::array<std::size_t, 2>> came_from(n);

  for (std::size_t k = 0; k < n; ++k) {
    std::array<Score, 2> cur;
    for (std::size_t s = 0; s < 2; ++s) {
      const std::size_t other = 1 - s;
      Score stay = prev[s];
      Score moved{prev[other].cost + charge[other], prev[other].switches + 1};
      const bool take_move = moved < stay;  // ties stay
      const Score& best = take_move ? moved : stay;
      cur[s] = Score{costs[k].cost_of(slot(s)) + best.cost, best.switches};
      came_from[k][s] = take_move ? other : s;
    }
    prev = cur;
  }

  std::size_t s = prev[1] < prev[0] ? 1 : 0;
  if (!(prev[0] < prev[1]) && !(prev[1] < prev[0])) s = index(start);
  out.opt_cost = prev[s].cost;
  out.switch_count = prev[s].switches;
  out.schedule.resize(n);
  for (std::size_t k = n; k-- > 0;) {
    out.schedule[k] = slot(s);
    s = came_from[k][s];
  }
  return out;
}

OptResult opt_bruteforce(std::span<const CostPair> costs, double sc_12, double sc_21,
                         ImplSlot start) {
  if (costs.size() > kBruteForceLimit) {
    throw ValidationError("brute force is limited to " + std::to_string(kBruteForceLimit) +
                          " requests, got " + std::to_string(costs.size()));
  }
  validate_inputs(costs, sc_12, sc_21);
  OptResult out;
  if (costs.empty()) return out;

  const std::size_t n = costs.size();
  Score best;
  std::uint32_t best_mask = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    // bit k set: request k served by Second
    Score s{0.0, 0};
    ImplSlot current = start;
    for (std::size_t k = 0; k < n; ++k) {
      const ImplSlot want = (mask >> k) & 1u ? ImplSlot::Second : ImplSlot::First;
      double acc = s.cost;
      if (want != current) {
        acc = acc + (current == ImplSlot::First ? sc_12 : sc_21);
        ++s.switches;
        current = want;
      }
      s.cost = costs[k].cost_of(want) + acc;
    }
    if (s < best) {
      best = s;
      best_mask = mask;
    }
  }
  out.opt_cost = best.cost;
  out.switch_count = best.switches;
  out.schedule.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.schedule[k] = (best_mask >> k) & 1u ? ImplSlot::Second : ImplSlot::First;
  }
  return out;
}

double competitive_report(double alg_cost, const OptResult& opt) {
  if (opt.opt_cost == 0.0) {
    return alg_cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return alg_cost / opt.opt_cost;
}

}  // namespace deltalab
