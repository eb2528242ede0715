#include "deltalab/simulation.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "deltalab/errors.hpp"
#include "deltalab/pubsub.hpp"
#include "deltalab/workload.hpp"

namespace deltalab {

using nlohmann::json;

namespace {


double signed_nonsub_minus_sub(ImplSlot active, double delta) {
  return active == ImplSlot::First ? delta : -delta;
}

bool same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

std::vector<double> predict_for(const DeltaFormula& formula, const Scenario& s) {
  const double rt = s.switch_costs().round_trip();
  if (formula.n_clients == 2 && formula.periodic() && formula.kind != DeltaFormula::Kind::PaperN3 &&
      s.t0 == 0.0) {
    return predicted_switch_times(formula.W, formula.omega, rt, s.start_impl, s.horizon);
  }
  return predicted_switch_times_numeric([&](double t) { return formula(t); }, rt, s.start_impl,
                                        s.t0, s.horizon, formula.period() / 1e4);
}

json verdict_json(const CriterionVerdict& v, double d1, double d2) {
  return {{"holds", v.holds}, {"lhs", v.lhs}, {"rhs", v.rhs}, {"d1", d1}, {"d2", d2}};
}

}  // namespace

SimulationTrace simulate(const Scenario& scenario) {
  validate(scenario);
  SimulationTrace trace;
  trace.scenario = scenario;

  Discretization disc = discretize(scenario.workload, scenario.t0, scenario.horizon, scenario.dt,
                                   scenario.discretize_mode);
  trace.warnings = std::move(disc.warnings);

  const PubSubCosts unit = elementary_costs(scenario.n_clients);
  trace.costs.reserve(disc.ticks.size());
  for (const TickSample& tick : disc.ticks) {
    trace.costs.push_back(to_cost_pair(cost_rates(unit, tick.read_mass, tick.write_mass)));
  }

  const SwitchCosts sc = scenario.switch_costs();
  RunResult run = run_sequence(trace.costs, scenario.start_impl, sc);

  trace.samples.reserve(disc.ticks.size() + 1);
  const Intensities first = intensities_at(scenario.workload, scenario.t0);
  trace.samples.push_back({scenario.t0, 0.0, scenario.start_impl, 0.0, first.n_r, first.n_w});

  double running = 0.0;
  std::size_t next_event = 0;
  for (std::size_t k = 0; k < disc.ticks.size(); ++k) {
    const TickSample& tick = disc.ticks[k];
    const double t_end = tick.t + tick.dt;
    const ImplSlot served = run.served_by[k];
    running += trace.costs[k].cost_of(served);
    if (next_event < run.events.size() && run.events[next_event].step_index == k + 1) {
      SwitchEvent& ev = run.events[next_event++];
      ev.sim_time = t_end;
      running += ev.charged_cost;
    }
    const Intensities rate = intensities_at(scenario.workload, t_end);
    trace.samples.push_back({t_end, signed_nonsub_minus_sub(served, run.deltas[k]), served,
                             running, rate.n_r, rate.n_w});
  }

  for (std::size_t i = 0; i < run.events.size(); ++i) {
    window_certificate(trace.costs, run.events, i, sc.round_trip());
  }

  trace.events = std::move(run.events);
  trace.totals.request_cost = run.request_cost;
  trace.totals.switch_charges = run.switch_charges;
  trace.totals.grand_total = run.request_cost + run.switch_charges;
  trace.policy_total = run.total_cost;
  return trace;
}

AnalyticComparison compare_to_analytic(const SimulationTrace& trace, const DeltaFormula& formula) {
  if (trace.samples.empty()) throw ValidationError("cannot compare an empty trace");
  const Scenario& s = trace.scenario;
  if (!s.sinusoidal()) {
    throw ValidationError("analytic comparison needs a sinusoidal workload");
  }
  if (formula.n_clients != s.n_clients || !same(formula.W, s.W) ||
      !same(formula.omega, s.omega)) {
    throw ValidationError("delta formula parameters do not match the scenario");
  }

  AnalyticComparison out;
  const double cutoff = trace.events.empty() ? std::numeric_limits<double>::infinity()
                                             : trace.events.front().sim_time.value();
  const double origin = formula(s.t0);
  for (const TraceSample& sample : trace.samples) {
    if (sample.t > cutoff) break;
    out.sup_norm_error =
        std::max(out.sup_norm_error, std::abs(sample.delta - (formula(sample.t) - origin)));
    ++out.samples_compared;
  }

  out.predicted_switch_times = predict_for(formula, s);
  const std::size_t paired = std::min(out.predicted_switch_times.size(), trace.events.size());
  for (std::size_t i = 0; i < paired; ++i) {
    out.switch_time_errors.push_back(
        std::abs(trace.events[i].sim_time.value() - out.predicted_switch_times[i]));
  }
  return out;
}

json analyze(const Scenario& s) {
  validate(s);
  const SwitchCosts sc = s.switch_costs();
  const double rt = sc.round_trip();
  json j;
  j["switching_cost"] = {{"sc_12", sc.sc_12}, {"sc_21", sc.sc_21}, {"round_trip", rt}};
  if (const auto* c = std::get_if<sc_spec::Coverage>(&s.sc_spec)) {
    j["coverage_lambda"] = c->lambda;
  }
  if (!s.sinusoidal()) {
    j["analytic"] = nullptr;
    return j;
  }

  const DeltaFormula model = DeltaFormula::model(s.n_clients, s.W, s.omega);
  auto amplitude_json = [&](const DeltaFormula& f) -> json {
    if (!f.periodic()) return {{"double_amplitude", nullptr}, {"coverage_for_equality", nullptr}};
    const double da = double_amplitude(f);
    return {{"double_amplitude", da},
            {"coverage_for_equality", coverage_for_switching_cost(s.W, s.omega, da)}};
  };
  j["model_curve"] = amplitude_json(model);
  if (s.n_clients == 2 || s.n_clients == 3 || s.n_clients == 10) {
    j["paper_curve"] = amplitude_json(DeltaFormula::paper(s.n_clients, s.W, s.omega));
  }

  const double end = s.t0 + s.horizon;
  j["max_recovery"] = {
      {"nonsub_active", max_rise([&](double t) { return model(t); }, s.t0, end)},
      {"sub_active", max_rise([&](double t) { return -model(t); }, s.t0, end)}};
  j["predicted_switch_times"] = predict_for(model, s);

  // local fit around t0, and the same d1 against a uniform curvature bound
  const double window = model.period() / 50.0;
  std::vector<SeriesPoint> series;
  for (int i = -100; i <= 100; ++i) {
    const double t = s.t0 + window * 0.5 * i / 100.0;
    series.push_back({t, model(t)});
  }
  const DerivativeEstimate est = estimate_derivatives(series, s.t0, window);
  const double d2_bound = 0.5 * s.W * (s.n_clients + 2.0) * s.omega;
  j["criterion7"] = {{"local", verdict_json(criterion7(est.d1, est.d2, rt), est.d1, est.d2)},
                     {"uniform_bound",
                      verdict_json(criterion7(est.d1, d2_bound, rt), est.d1, d2_bound)}};

  if (s.n_clients == 2 && s.W == 1.0 && s.omega == 1.0 && rt > 0.0 && rt < 2.0) {
    const Eq6Bounds b = eq6_bounds();
    const Eq6SwitchPoints p = eq6_switch_points(rt);
    j["eq6"] = {{"cost", eq6_cost(rt)},
                {"ideal_bound", b.ideal},
                {"worst_bound", b.worst},
                {"switch_to_sub", p.to_sub},
                {"switch_to_nonsub", p.to_nonsub}};
  }
  return j;
}

OracleSummary oracle_summary(const SimulationTrace& trace) {
  const SwitchCosts sc = trace.scenario.switch_costs();
  OracleSummary out;
  out.opt = opt_dp(trace.costs, sc.sc_12, sc.sc_21, trace.scenario.start_impl);
  out.delta_total = trace.policy_total;
  out.delta_switches = trace.events.size();
  out.ratio = competitive_report(out.delta_total, out.opt);
  if (out.opt.opt_cost > out.delta_total) {
    throw InvariantViolation("offline optimum exceeds the online cost");
  }
  return out;
}

void write_trace_csv(std::ostream& out, const SimulationTrace& trace) {
  out << "t,delta,active,running_total,n_r,n_w\n";
  for (const TraceSample& s : trace.samples) {
    out << fmt::format("{},{},{},{},{},{}\n", s.t, s.delta, impl_name(s.active),
                       s.running_total, s.n_r, s.n_w);
  }
}

void write_events_csv(std::ostream& out, const SimulationTrace& trace) {
  out << "t,from,to,charge\n";
  for (const SwitchEvent& e : trace.events) {
    out << fmt::format("{},{},{},{}\n", e.sim_time.value_or(0.0), impl_name(e.from),
                       impl_name(e.to), e.charged_cost);
  }
}

json summary_json(const SimulationTrace& trace) {
  const OracleSummary oracle = oracle_summary(trace);
  json events = json::array();
  for (const SwitchEvent& e : trace.events) {
    events.push_back({{"step", e.step_index},
                      {"t", e.sim_time.value_or(0.0)},
                      {"from", impl_name(e.from)},
                      {"to", impl_name(e.to)},
                      {"charge", e.charged_cost}});
  }
  json j;
  j["totals"] = {{"request_cost", trace.totals.request_cost},
                 {"switch_charges", trace.totals.switch_charges},
                 {"grand_total", trace.totals.grand_total}};
  j["events"] = std::move(events);
  j["ticks"] = trace.costs.size();
  j["opt_cost"] = oracle.opt.opt_cost;
  j["opt_switches"] = oracle.opt.switch_count;
  j["ratio"] = std::isinf(oracle.ratio) ? json("inf") : json(oracle.ratio);
  const json analysis = analyze(trace.scenario);
  j["criterion7"] = analysis.contains("criterion7") ? analysis["criterion7"] : json(nullptr);
  j["warnings"] = trace.warnings;
  return j;
}

}  // namespace deltalab
