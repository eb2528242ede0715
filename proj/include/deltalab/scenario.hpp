#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "deltalab/pubsub.hpp"
#include "deltalab/switcher.hpp"
#include "deltalab/workload.hpp"

namespace deltalab {

namespace sc_spec {

/// Nonsub -> sub cost from database coverage; the reverse switch costs sc_21.
struct Coverage {
  double lambda = 1.0;
  double sc_21 = 0.0;
};

struct Explicit {
  double sc_12 = 0.0;
  double sc_21 = 0.0;
};

}  // namespace sc_spec

using SwitchCostSpec = std::variant<sc_spec::Coverage, sc_spec::Explicit>;

/// A complete experiment. The nonsub implementation is ImplSlot::First and
/// the sub implementation ImplSlot::Second.
struct Scenario {
  int n_clients = 2;
  double W = 1.0;
  double omega = 1.0;
  IntensitySpec workload = intensity::Sinusoidal{};
  SwitchCostSpec sc_spec = sc_spec::Explicit{4.0, 0.0};
  ImplSlot start_impl = ImplSlot::First;
  double t0 = 0.0;
  double horizon = 1.0;
  double dt = 1e-3;
  DiscretizeMode discretize_mode = DiscretizeMode::FractionalMass;

  SwitchCosts switch_costs() const;
  bool sinusoidal() const noexcept {
    return std::holds_alternative<intensity::Sinusoidal>(workload);
  }
};

/// Checks cross-field invariants (positive round trip, positive horizon, ...).
void validate(const Scenario& s);

/// Builds a scenario from JSON, rejecting unknown fields. Trace paths are
/// resolved against `base_dir`. Errors name the offending field.
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

Scenario load_scenario(const std::filesystem::path& path);

/// Reads and parses a JSON file, reporting syntax errors as ValidationError.
nlohmann::json read_json_file(const std::filesystem::path& path);

std::string_view impl_name(ImplSlot slot) noexcept;  // "nonsub" / "sub"

}  // namespace deltalab
