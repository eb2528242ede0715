#include "deltalab/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "deltalab/errors.hpp"

namespace deltalab {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ValidationError("scenario field '" + field + "': " + what);
}

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!ok.contains(key)) {
      field_error(where.empty() ? key : where + "." + key, "unknown field");
    }
  }
}

const json& require(const json& obj, const std::string& where, const char* key) {
  if (!obj.contains(key)) field_error(where.empty() ? key : where + "." + key, "missing");
  return obj.at(key);
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) field_error(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) field_error(field, "must be finite");
  return x;
}

double positive(const json& v, const std::string& field) {
  const double x = number(v, field);
  if (!(x > 0.0)) field_error(field, "must be positive");
  return x;
}

double nonnegative(const json& v, const std::string& field) {
  const double x = number(v, field);
  if (x < 0.0) field_error(field, "must be non-negative");
  return x;
}

std::string string_field(const json& v, const std::string& field) {
  if (!v.is_string()) field_error(field, "expected a string");
  return v.get<std::string>();
}

json object_field(const json& v, const std::string& field) {
  if (!v.is_object()) field_error(field, "expected an object");
  return v;
}

IntensitySpec parse_workload(const json& w, double W, double omega,
                             const std::filesystem::path& base_dir) {
  object_field(w, "workload");
  const std::string kind = string_field(require(w, "workload", "kind"), "workload.kind");
  if (kind == "sinusoidal") {
    reject_unknown(w, "workload", {"kind"});
    return intensity::Sinusoidal{W, omega};
  }
  if (kind == "constant") {
    reject_unknown(w, "workload", {"kind", "n_r", "n_w"});
    return intensity::Constant{nonnegative(require(w, "workload", "n_r"), "workload.n_r"),
                               nonnegative(require(w, "workload", "n_w"), "workload.n_w")};
  }
  if (kind == "piecewise") {
    reject_unknown(w, "workload", {"kind", "breakpoints"});
    const json& bps = require(w, "workload", "breakpoints");
    if (!bps.is_array()) field_error("workload.breakpoints", "expected an array");
    intensity::Piecewise p;
    for (std::size_t i = 0; i < bps.size(); ++i) {
      const std::string where = "workload.breakpoints[" + std::to_string(i) + "]";
      object_field(bps[i], where);
      reject_unknown(bps[i], where, {"t", "n_r", "n_w"});
      p.breakpoints.push_back({number(require(bps[i], where, "t"), where + ".t"),
                               nonnegative(require(bps[i], where, "n_r"), where + ".n_r"),
                               nonnegative(require(bps[i], where, "n_w"), where + ".n_w")});
    }
    try {
      validate(IntensitySpec{p});
    } catch (const ValidationError& e) {
      field_error("workload.breakpoints", e.what());
    }
    return p;
  }
  if (kind == "trace") {
    reject_unknown(w, "workload", {"kind", "path"});
    std::filesystem::path path = string_field(require(w, "workload", "path"), "workload.path");
    if (path.is_relative()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) field_error("workload.path", "cannot open '" + path.string() + "'");
    try {
      return load_trace(in);
    } catch (const ValidationError& e) {
      field_error("workload.path", e.what());
    }
  }
  field_error("workload.kind", "expected sinusoidal, constant, piecewise or trace");
}

SwitchCostSpec parse_sc(const json& s) {
  object_field(s, "sc_spec");
  const std::string kind = string_field(require(s, "sc_spec", "kind"), "sc_spec.kind");
  if (kind == "coverage") {
    reject_unknown(s, "sc_spec", {"kind", "lambda", "sc_21"});
    sc_spec::Coverage c;
    c.lambda = positive(require(s, "sc_spec", "lambda"), "sc_spec.lambda");
    if (s.contains("sc_21")) c.sc_21 = nonnegative(s.at("sc_21"), "sc_spec.sc_21");
    return c;
  }
  if (kind == "explicit") {
    reject_unknown(s, "sc_spec", {"kind", "sc_12", "sc_21"});
    sc_spec::Explicit e;
    e.sc_12 = nonnegative(require(s, "sc_spec", "sc_12"), "sc_spec.sc_12");
    if (s.contains("sc_21")) e.sc_21 = nonnegative(s.at("sc_21"), "sc_spec.sc_21");
    return e;
  }
  field_error("sc_spec.kind", "expected coverage or explicit");
}

}  // namespace

std::string_view impl_name(ImplSlot slot) noexcept {
  return slot == ImplSlot::First ? "nonsub" : "sub";
}

SwitchCosts Scenario::switch_costs() const {
  if (const auto* c = std::get_if<sc_spec::Coverage>(&sc_spec)) {
    return {switching_cost_coverage(W, omega, CoverageSpec{c->lambda}), c->sc_21};
  }
  const auto& e = std::get<sc_spec::Explicit>(sc_spec);
  return {e.sc_12, e.sc_21};
}

void validate(const Scenario& s) {
  if (s.n_clients < 1) throw ValidationError("n_clients must be at least 1");
  if (!std::isfinite(s.W) || !(s.W > 0.0)) throw ValidationError("W must be positive");
  if (!std::isfinite(s.omega) || !(s.omega > 0.0)) {
    throw ValidationError("omega must be positive");
  }
  if (!std::isfinite(s.t0)) throw ValidationError("t0 must be finite");
  if (!std::isfinite(s.horizon) || !(s.horizon > 0.0)) {
    throw ValidationError("horizon must be positive");
  }
  if (!std::isfinite(s.dt) || !(s.dt > 0.0)) throw ValidationError("dt must be positive");
  validate(s.workload);
  validate(s.switch_costs());
}

Scenario scenario_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ValidationError("scenario must be a JSON object");
  reject_unknown(j, "", {"n_clients", "W", "omega", "workload", "sc_spec", "start_impl", "t0",
                         "horizon", "dt", "discretize_mode"});
  Scenario s;
  const json& n = require(j, "", "n_clients");
  if (!n.is_number_integer()) field_error("n_clients", "expected an integer");
  s.n_clients = n.get<int>();
  if (s.n_clients < 1) field_error("n_clients", "must be at least 1");
  s.W = positive(require(j, "", "W"), "W");
  s.omega = positive(require(j, "", "omega"), "omega");
  s.workload = parse_workload(require(j, "", "workload"), s.W, s.omega, base_dir);
  s.sc_spec = parse_sc(require(j, "", "sc_spec"));

  const std::string start = string_field(require(j, "", "start_impl"), "start_impl");
  if (start == "nonsub") {
    s.start_impl = ImplSlot::First;
  } else if (start == "sub") {
    s.start_impl = ImplSlot::Second;
  } else {
    field_error("start_impl", "expected nonsub or sub");
  }

  s.t0 = j.contains("t0") ? number(j.at("t0"), "t0") : 0.0;
  s.horizon = positive(require(j, "", "horizon"), "horizon");

  if (j.contains("dt") && !j.at("dt").is_null()) {
    s.dt = positive(j.at("dt"), "dt");
  } else if (s.sinusoidal()) {
    s.dt = 2.0 * std::numbers::pi / s.omega / 1e4;
  } else if (const auto* tr = std::get_if<intensity::Trace>(&s.workload)) {
    s.dt = tr->samples.front().dt;
  } else {
    field_error("dt", "required for non-sinusoidal workloads");
  }

  if (j.contains("discretize_mode")) {
    const std::string mode = string_field(j.at("discretize_mode"), "discretize_mode");
    if (mode == "fractional") {
      s.discretize_mode = DiscretizeMode::FractionalMass;
    } else if (mode == "integer") {
      s.discretize_mode = DiscretizeMode::IntegerLargestRemainder;
    } else {
      field_error("discretize_mode", "expected fractional or integer");
    }
  }

  try {
    validate(s.switch_costs());
  } catch (const ValidationError& e) {
    field_error("sc_spec", e.what());
  }
  return s;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(read_json_file(path), path.parent_path());
}

}  // namespace deltalab
