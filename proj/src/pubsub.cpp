#include "deltalab/pubsub.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "deltalab/errors.hpp"

namespace deltalab {

namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw ValidationError(std::string(name) + " must be finite and positive");
  }
}

}  // namespace

PubSubCosts elementary_costs(int n_clients) {
  if (n_clients < 1) {
    throw ValidationError("n_clients must be at least 1, got " + std::to_string(n_clients));
  }
  PubSubCosts c;
  c.n_clients = n_clients;
  c.c_nw = 1.0;
  c.c_nr = 2.0;
  // one server update plus a notification to every other client
  c.c_sw = 2.0 + static_cast<double>(n_clients - 1);
  c.c_sr = 0.0;
  return c;
}

CostRates cost_rates(const PubSubCosts& costs, double n_r, double n_w) {
  if (!std::isfinite(n_r) || !std::isfinite(n_w) || n_r < 0.0 || n_w < 0.0) {
    throw ValidationError("request intensities must be finite and non-negative");
  }
  return {costs.c_nr * n_r + costs.c_nw * n_w, costs.c_sr * n_r + costs.c_sw * n_w};
}

double switching_cost_coverage(double W, double omega, CoverageSpec coverage) {
  require_positive(W, "W");
  require_positive(omega, "omega");
  require_positive(coverage.lambda, "lambda");
  return 2.0 * std::numbers::pi * W / (omega * coverage.lambda);
}

double coverage_for_switching_cost(double W, double omega, double sc) {
  require_positive(W, "W");
  require_positive(omega, "omega");
  require_positive(sc, "switching cost");
  return 2.0 * std::numbers::pi * W / (omega * sc);
}

TraceSwitchCost switching_cost_trace(std::span<const double> item_read_costs) {
  TraceSwitchCost out;
  out.degenerate = item_read_costs.empty();
  for (double c : item_read_costs) {
    if (!std::isfinite(c) || c < 0.0) {
      throw ValidationError("item read costs must be finite and non-negative");
    }
    out.value += c;
  }
  return out;
}

}  // namespace deltalab
