#include "deltalab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "deltalab/errors.hpp"
#include "deltalab/figures.hpp"
#include "deltalab/scenario.hpp"
#include "deltalab/simulation.hpp"

namespace deltalab {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write '" + path.string() + "'");
  f << content;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create '" + dir.string() + "': " + ec.message());
}

void report_warnings(const SimulationTrace& trace, std::ostream& err) {
  for (const auto& w : trace.warnings) err << "warning: " << w << '\n';
}

int cmd_simulate(const fs::path& scenario_path, const fs::path& out_dir, std::ostream& out,
                 std::ostream& err) {
  const SimulationTrace trace = simulate(load_scenario(scenario_path));
  report_warnings(trace, err);
  ensure_dir(out_dir);

  std::ostringstream trace_csv, events_csv;
  write_trace_csv(trace_csv, trace);
  write_events_csv(events_csv, trace);
  write_file(out_dir / "trace.csv", trace_csv.str());
  write_file(out_dir / "events.csv", events_csv.str());
  write_file(out_dir / "summary.json", summary_json(trace).dump(2) + "\n");

  out << fmt::format("{} ticks, {} switches, total cost {}\n", trace.costs.size(),
                     trace.events.size(), trace.totals.grand_total);
  return 0;
}

int cmd_analyze(const fs::path& scenario_path, std::ostream& out) {
  out << analyze(load_scenario(scenario_path)).dump(2) << '\n';
  return 0;
}

int cmd_oracle(const fs::path& scenario_path, std::ostream& out, std::ostream& err) {
  const SimulationTrace trace = simulate(load_scenario(scenario_path));
  report_warnings(trace, err);
  const OracleSummary s = oracle_summary(trace);
  json j = {{"opt_cost", s.opt.opt_cost},
            {"opt_switches", s.opt.switch_count},
            {"delta_total", s.delta_total},
            {"delta_switches", s.delta_switches},
            {"ratio", std::isinf(s.ratio) ? json("inf") : json(s.ratio)}};
  out << j.dump(2) << '\n';
  return 0;
}

int cmd_figures(int which, int resolution, const fs::path& out_path, std::ostream& out) {
  const std::string csv = figure_csv(which, resolution);
  if (out_path.has_parent_path()) ensure_dir(out_path.parent_path());
  write_file(out_path, csv);
  out << "wrote " << out_path.string() << '\n';
  return 0;
}

// Writes `value` into the scenario JSON at the place `param` names.
void override_param(json& j, const std::string& param, double value) {
  if (param == "n_clients") {
    if (value != std::floor(value)) throw ValidationError("n_clients values must be integers");
    j["n_clients"] = static_cast<int>(value);
  } else if (param == "W" || param == "omega" || param == "t0" || param == "horizon" ||
             param == "dt") {
    j[param] = value;
  } else if (param == "lambda" || param == "sc_12" || param == "sc_21") {
    if (!j.contains("sc_spec") || !j["sc_spec"].is_object()) {
      throw ValidationError("scenario has no sc_spec object to sweep");
    }
    const std::string kind = j["sc_spec"].value("kind", "");
    if ((param == "lambda" && kind != "coverage") || (param == "sc_12" && kind != "explicit")) {
      throw ValidationError("parameter '" + param + "' does not apply to sc_spec kind '" +
                            kind + "'");
    }
    j["sc_spec"][param] = value;
  } else {
    throw ValidationError("unknown sweep parameter '" + param + "'");
  }
}

struct SweepRow {
  double value = 0.0;
  std::size_t events = 0;
  SimulationTotals totals;
  double opt_cost = 0.0;
  double ratio = 1.0;
};

int cmd_sweep(const fs::path& scenario_path, const std::string& param,
              std::vector<double> values, const fs::path& out_dir, std::ostream& out) {
  if (values.empty()) throw ValidationError("--values must list at least one value");
  const json base = read_json_file(scenario_path);
  const fs::path base_dir = scenario_path.parent_path();

  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Each run owns its scenario and trace; nothing mutable is shared.
  std::vector<std::future<SweepRow>> jobs;
  for (double v : values) {
    jobs.push_back(std::async(std::launch::async, [&base, &base_dir, &param, v] {
      json j = base;
      override_param(j, param, v);
      const SimulationTrace trace = simulate(scenario_from_json(j, base_dir));
      const OracleSummary o = oracle_summary(trace);
      return SweepRow{v, trace.events.size(), trace.totals, o.opt.opt_cost, o.ratio};
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& job : jobs) rows.push_back(job.get());

  std::string csv = "value,events,request_cost,switch_charges,grand_total,opt_cost,ratio\n";
  for (const SweepRow& r : rows) {
    csv += fmt::format("{},{},{},{},{},{},{}\n", r.value, r.events, r.totals.request_cost,
                       r.totals.switch_charges, r.totals.grand_total, r.opt_cost, r.ratio);
  }
  ensure_dir(out_dir);
  write_file(out_dir / "sweep.csv", csv);
  out << fmt::format("{} runs written to {}\n", rows.size(), (out_dir / "sweep.csv").string());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delta-algorithm switching laboratory"};
  app.require_subcommand(1);

  std::string scenario, out_path, param;
  std::vector<double> values;
  int which = 0;
  int resolution = 1001;

  auto* sim = app.add_subcommand("simulate", "run a scenario and write trace, events, summary");
  sim->add_option("--scenario", scenario, "scenario JSON")->required();
  sim->add_option("--out", out_path, "output directory")->required();

  auto* ana = app.add_subcommand("analyze", "closed-form predictions for a scenario");
  ana->add_option("--scenario", scenario, "scenario JSON")->required();

  auto* ora = app.add_subcommand("oracle", "offline optimum versus the delta algorithm");
  ora->add_option("--scenario", scenario, "scenario JSON")->required();

  auto* fig = app.add_subcommand("figures", "emit a delta-curve figure table as CSV");
  fig->add_option("--which", which, "figure number (1, 2 or 3)")->required();
  fig->add_option("--out", out_path, "output CSV path")->required();
  fig->add_option("--resolution", resolution, "number of rows");

  auto* swp = app.add_subcommand("sweep", "one simulation per parameter value");
  swp->add_option("--scenario", scenario, "scenario JSON")->required();
  swp->add_option("--param", param, "parameter name")->required();
  swp->add_option("--values", values, "comma-separated values")->required()->delimiter(',');
  swp->add_option("--out", out_path, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*sim) return cmd_simulate(scenario, out_path, out, err);
    if (*ana) return cmd_analyze(scenario, out);
    if (*ora) return cmd_oracle(scenario, out, err);
    if (*fig) return cmd_figures(which, resolution, out_path, out);
    if (*swp) return cmd_sweep(scenario, param, values, out_path, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace deltalab
