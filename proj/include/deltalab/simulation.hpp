#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deltalab/analytic.hpp"
#include "deltalab/oracle.hpp"
#include "deltalab/scenario.hpp"
#include "deltalab/switcher.hpp"

namespace deltalab {

/// State at the end of a tick, before a switch decided on that tick is applied.
struct TraceSample {
  double t = 0.0;
  double delta = 0.0;  // policy delta, always signed nonsub - sub
  ImplSlot active = ImplSlot::First;
  double running_total = 0.0;
  double n_r = 0.0;
  double n_w = 0.0;
};

struct SimulationTotals {
  double request_cost = 0.0;
  double switch_charges = 0.0;
  double grand_total = 0.0;  // request_cost + switch_charges
};

struct SimulationTrace {
  Scenario scenario;
  std::vector<TraceSample> samples;  // first sample is the initial state at t0
  std::vector<SwitchEvent> events;
  SimulationTotals totals;
  std::vector<CostPair> costs;  // per-tick (nonsub, sub) costs fed to the policy
  double policy_total = 0.0;    // same total, summed in request order
  std::vector<std::string> warnings;
};

/// Workload -> per-tick masses -> pub/sub costs -> delta algorithm. Every
/// switch is checked against its window certificate (InvariantViolation if
/// one is missing).
SimulationTrace simulate(const Scenario& scenario);

struct AnalyticComparison {
  double sup_norm_error = 0.0;  // over samples up to and including the first switch
  std::size_t samples_compared = 0;
  std::vector<double> predicted_switch_times;
  std::vector<double> switch_time_errors;  // |t_sim - t_predicted|, paired in order
};

/// Compares a sinusoidal-workload trace with a closed-form delta curve whose
/// parameters must match the trace's scenario.
AnalyticComparison compare_to_analytic(const SimulationTrace& trace, const DeltaFormula& formula);

/// Derived switching cost, double amplitude, predicted switches, parabola-criterion
/// verdicts and, in normalized two-client runs, the accumulated-cost bounds.
nlohmann::json analyze(const Scenario& scenario);

struct OracleSummary {
  OptResult opt;
  double delta_total = 0.0;
  std::size_t delta_switches = 0;
  double ratio = 1.0;
};

OracleSummary oracle_summary(const SimulationTrace& trace);

void write_trace_csv(std::ostream& out, const SimulationTrace& trace);
void write_events_csv(std::ostream& out, const SimulationTrace& trace);
nlohmann::json summary_json(const SimulationTrace& trace);

}  // namespace deltalab
