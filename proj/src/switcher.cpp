#include "deltalab/switcher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "deltalab/errors.hpp"

namespace deltalab {

std::string_view to_string(ImplSlot slot) noexcept {
  return slot == ImplSlot::First ? "first" : "second";
}

void validate(const CostPair& costs) {
  if (!std::isfinite(costs.cost_first) || !std::isfinite(costs.cost_second) ||
      costs.cost_first < 0.0 || costs.cost_second < 0.0) {
    throw ValidationError("request costs must be finite and non-negative, got (" +
                          std::to_string(costs.cost_first) + ", " +
                          std::to_string(costs.cost_second) + ")");
  }
}

void validate(const SwitchCosts& sc) {
  if (!std::isfinite(sc.sc_12) || !std::isfinite(sc.sc_21) || sc.sc_12 < 0.0 ||
      sc.sc_21 < 0.0) {
    throw ValidationError("switching costs must be finite and non-negative");
  }
  if (!(sc.round_trip() > 0.0)) {
    throw ValidationError("round-trip switching cost must be positive");
  }
}

SwitchPolicy::SwitchPolicy(ImplSlot start, double round_trip_sc)
    : active_(start), round_trip_sc_(round_trip_sc) {
  // SC = 0 would ask for a switch on every request that favours the passive side.
  if (!std::isfinite(round_trip_sc) || !(round_trip_sc > 0.0)) {
    throw ValidationError("round-trip switching cost must be finite and positive");
  }
}

Decision SwitchPolicy::observe(const CostPair& costs) {
  validate(costs);
  ++step_index_;
  acc_active_ += costs.cost_of(active_);
  acc_passive_ += costs.cost_of(opposite(active_));
  const double d = delta();
  min_delta_ = std::min(min_delta_, d);
  return d - min_delta_ >= round_trip_sc_ ? Decision::Switch : Decision::Stay;
}

void SwitchPolicy::apply_switch() noexcept {
  active_ = opposite(active_);
  acc_active_ = 0.0;
  acc_passive_ = 0.0;
  min_delta_ = 0.0;
}

RunResult run_sequence(std::span<const CostPair> costs, ImplSlot start,
                       const SwitchCosts& sc) {
  validate(sc);
  SwitchPolicy policy(start, sc.round_trip());
  RunResult out;
  out.deltas.reserve(costs.size());
  out.served_by.reserve(costs.size());

  for (const CostPair& c : costs) {
    const ImplSlot serving = policy.active();
    const Decision decision = policy.observe(c);
    const double served = c.cost_of(serving);
    out.total_cost += served;
    out.request_cost += served;
    out.deltas.push_back(policy.delta());
    out.served_by.push_back(serving);

    if (decision == Decision::Switch) {
      const double charge = sc.charge(serving);
      out.total_cost += charge;
      out.switch_charges += charge;
      out.events.push_back(SwitchEvent{policy.step_index(), std::nullopt, serving,
                                       opposite(serving), charge});
      policy.apply_switch();
    }
  }
  return out;
}

std::size_t window_certificate(std::span<const CostPair> cost_history,
                               std::span<const SwitchEvent> events,
                               std::size_t event_index, double round_trip_sc) {
  if (event_index >= events.size()) {
    throw ValidationError("event index out of range");
  }
  const SwitchEvent& ev = events[event_index];
  const std::size_t k = ev.step_index;
  const std::size_t begin = event_index == 0 ? 0 : events[event_index - 1].step_index;
  if (k == 0 || k > cost_history.size() || k <= begin) {
    throw ValidationError("event step index inconsistent with cost history");
  }

  // Suffix sums over j..k, walking j downwards; keep the smallest j that works.
  // Sums are formed in a different order than the policy's running
  // accumulators, so allow a few ulps of the magnitudes involved.
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double active_sum = 0.0;
  double passive_sum = 0.0;
  double magnitude = round_trip_sc;
  std::size_t found = 0;
  for (std::size_t j = k; j > begin; --j) {
    const CostPair& c = cost_history[j - 1];
    active_sum += c.cost_of(ev.from);
    passive_sum += c.cost_of(ev.to);
    magnitude += c.cost_first + c.cost_second;
    const double slack = 8.0 * eps * static_cast<double>(k - j + 2) * magnitude;
    if (passive_sum <= active_sum - round_trip_sc + slack) found = j;
  }
  if (found == 0) {
    throw InvariantViolation("no window certificate for switch at step " +
                             std::to_string(k));
  }
  return found;
}

}  // namespace deltalab
