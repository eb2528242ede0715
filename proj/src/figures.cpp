#include "deltalab/figures.hpp"

#include <numbers>

#include <fmt/format.h>

#include "deltalab/analytic.hpp"
#include "deltalab/errors.hpp"

namespace deltalab {

std::string figure_csv(int which, int resolution) {
  int n_clients = 0;
  switch (which) {
    case 1: n_clients = 2; break;
    case 2: n_clients = 3; break;
    case 3: n_clients = 10; break;
    default: throw ValidationError("unknown figure " + std::to_string(which) + "; expected 1, 2 or 3");
  }
  if (resolution < 2) throw ValidationError("figure resolution must be at least 2");

  const DeltaFormula printed = DeltaFormula::paper(n_clients, 1.0, 1.0);
  const DeltaFormula model = DeltaFormula::model(n_clients, 1.0, 1.0);
  const double span = 4.0 * std::numbers::pi;
  // +-A for A = 2W/omega, so the band is one round-trip SC wide
  const double guide = 2.0;

  std::string out = which == 1 ? "t,delta_paper,delta_model,sc_upper,sc_lower\n"
                               : "t,delta_paper,delta_model\n";
  for (int i = 0; i < resolution; ++i) {
    const double t = i + 1 == resolution ? span : span * i / (resolution - 1);
    if (which == 1) {
      out += fmt::format("{},{},{},{},{}\n", t, printed(t), model(t), guide, -guide);
    } else {
      out += fmt::format("{},{},{}\n", t, printed(t), model(t));
    }
  }
  return out;
}

}  // namespace deltalab
