#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace deltalab {

/// One of the two interchangeable component implementations.
enum class ImplSlot { First, Second };

constexpr ImplSlot opposite(ImplSlot slot) noexcept {
  return slot == ImplSlot::First ? ImplSlot::Second : ImplSlot::First;
}

std::string_view to_string(ImplSlot slot) noexcept;

/// Cost of serving one request (or one tick of request mass) on each
/// implementation.
struct CostPair {
  double cost_first = 0.0;
  double cost_second = 0.0;

  double cost_of(ImplSlot slot) const noexcept {
    return slot == ImplSlot::First ? cost_first : cost_second;
  }
};

/// Throws ValidationError unless both costs are finite and non-negative.
void validate(const CostPair& costs);

/// Per-direction switching charges. `sc_12` is paid for First -> Second,
/// `sc_21` for Second -> First. Decisions use the round trip.
struct SwitchCosts {
  double sc_12 = 0.0;
  double sc_21 = 0.0;

  double round_trip() const noexcept { return sc_12 + sc_21; }
  double charge(ImplSlot from) const noexcept {
    return from == ImplSlot::First ? sc_12 : sc_21;
  }
};

/// Throws ValidationError unless both charges are finite, non-negative and
/// the round trip is positive.
void validate(const SwitchCosts& sc);

enum class Decision { Stay, Switch };

struct SwitchEvent {
  std::size_t step_index = 0;  // 1-based index of the request that triggered
  std::optional<double> sim_time;
  ImplSlot from = ImplSlot::First;
  ImplSlot to = ImplSlot::Second;
  double charged_cost = 0.0;
};

/// State of the delta algorithm between two implementations.
///
/// The policy accumulates the cost each request would have had on the active
/// and on the passive implementation, tracks the running minimum of
/// `delta = acc_active - acc_passive` and asks for a switch once delta has
/// recovered from that minimum by at least the round-trip switching cost.
/// `observe` never changes the active slot; callers decide when to
/// `apply_switch`.
class SwitchPolicy {
 public:
  /// Throws ValidationError if `round_trip_sc` is not finite and positive.
  SwitchPolicy(ImplSlot start, double round_trip_sc);

  Decision observe(const CostPair& costs);
  void apply_switch() noexcept;

  ImplSlot active() const noexcept { return active_; }
  double acc_active() const noexcept { return acc_active_; }
  double acc_passive() const noexcept { return acc_passive_; }
  double delta() const noexcept { return acc_active_ - acc_passive_; }
  double min_delta() const noexcept { return min_delta_; }
  double round_trip_sc() const noexcept { return round_trip_sc_; }
  std::size_t step_index() const noexcept { return step_index_; }

  friend bool operator==(const SwitchPolicy&, const SwitchPolicy&) = default;

 private:
  ImplSlot active_;
  double acc_active_ = 0.0;
  double acc_passive_ = 0.0;
  double min_delta_ = 0.0;
  double round_trip_sc_;
  std::size_t step_index_ = 0;
};

struct RunResult {
  std::vector<SwitchEvent> events;
  double total_cost = 0.0;      // request costs and switch charges, in order
  double request_cost = 0.0;
  double switch_charges = 0.0;
  std::vector<double> deltas;   // acc_active - acc_passive after each step
  std::vector<ImplSlot> served_by;  // slot that served each step
};

/// Runs the delta algorithm over a whole cost sequence. A switch decided on
/// step k is charged immediately and takes effect from step k + 1.
RunResult run_sequence(std::span<const CostPair> costs, ImplSlot start,
                       const SwitchCosts& sc);

/// Returns the smallest 1-based index j such that, over requests j..k of the
/// event's stretch since the previous switch, the passive implementation cost
/// at most the active one minus the round-trip cost. Throws
/// InvariantViolation when no such window exists.
std::size_t window_certificate(std::span<const CostPair> cost_history,
                               std::span<const SwitchEvent> events,
                               std::size_t event_index, double round_trip_sc);

}  // namespace deltalab
