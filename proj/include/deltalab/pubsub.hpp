#pragma once

#include <span>

#include "deltalab/switcher.hpp"

namespace deltalab {

/// Elementary request costs of the pub/sub model. The nonsubscription mode
/// sends every read and write to the server; the subscription mode reads from
/// a local image and fans each write out to the other clients.
struct PubSubCosts {
  int n_clients = 1;
  double c_nw = 1.0;
  double c_nr = 2.0;
  double c_sw = 2.0;
  double c_sr = 0.0;
};

PubSubCosts elementary_costs(int n_clients);

/// Cost rates (or, applied to request masses, costs) of both modes.
struct CostRates {
  double i_n = 0.0;  // nonsubscription
  double i_s = 0.0;  // subscription
};

CostRates cost_rates(const PubSubCosts& costs, double n_r, double n_w);

/// Maps a rate or mass pair to the switcher's convention: First is nonsub,
/// Second is sub.
inline CostPair to_cost_pair(const CostRates& r) noexcept { return {r.i_n, r.i_s}; }

/// Number of full database coverings by reads over one intensity period.
struct CoverageSpec {
  double lambda = 1.0;
};

/// Nonsub -> sub switching cost when one period's read volume covers the
/// database `lambda` times: 2*pi*W / (omega*lambda).
double switching_cost_coverage(double W, double omega, CoverageSpec coverage);

/// Inverse of switching_cost_coverage: the coverage that yields `sc`.
double coverage_for_switching_cost(double W, double omega, double sc);

struct TraceSwitchCost {
  double value = 0.0;
  bool degenerate = false;  // empty database
};

/// Cost of reading every database item once to build the local image.
TraceSwitchCost switching_cost_trace(std::span<const double> item_read_costs);

}  // namespace deltalab
