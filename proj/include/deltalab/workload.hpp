#pragma once

#include <istream>
#include <string>
#include <variant>
#include <vector>

namespace deltalab {

/// Request mass (requests, not rates) over one tick [t, t + dt].
struct TickSample {
  double t = 0.0;
  double dt = 1.0;
  double read_mass = 0.0;
  double write_mass = 0.0;
};

namespace intensity {

/// n_r = W/2 (1 - cos wt), n_w = W/2 (1 + cos wt). Phase is fixed at zero.
struct Sinusoidal {
  double W = 1.0;
  double omega = 1.0;
};

struct Constant {
  double n_r = 0.0;
  double n_w = 0.0;
};

struct Breakpoint {
  double t = 0.0;
  double n_r = 0.0;
  double n_w = 0.0;
};

/// Linear interpolation between sorted breakpoints.
struct Piecewise {
  std::vector<Breakpoint> breakpoints;
};

struct Trace {
  std::vector<TickSample> samples;
};

}  // namespace intensity

using IntensitySpec = std::variant<intensity::Sinusoidal, intensity::Constant,
                                   intensity::Piecewise, intensity::Trace>;

/// Throws ValidationError on negative or non-finite parameters, unsorted
/// breakpoints, or a gappy trace.
void validate(const IntensitySpec& spec);

struct Intensities {
  double n_r = 0.0;
  double n_w = 0.0;
};

/// Exact evaluation of the read and write intensities at time t. Piecewise and
/// Trace specs reject t outside their domain.
Intensities intensities_at(const IntensitySpec& spec, double t);

enum class DiscretizeMode { FractionalMass, IntegerLargestRemainder };

struct Discretization {
  std::vector<TickSample> ticks;
  std::vector<std::string> warnings;
};

/// Splits [t0, t0 + horizon] into ticks of width dt (the last one may be
/// shorter) and integrates each intensity over every tick. Sinusoidal and
/// Constant masses are exact; Piecewise integrates the linear interpolant
/// exactly; Trace samples pass through. Integer mode rounds cumulative masses
/// so per-kind totals stay within half a request of the fractional ones.
Discretization discretize(const IntensitySpec& spec, double t0, double horizon, double dt,
                          DiscretizeMode mode = DiscretizeMode::FractionalMass);

/// Parses `t,dt,reads,writes` CSV. Errors name the offending line (the header
/// is line 1).
intensity::Trace load_trace(std::istream& in);

}  // namespace deltalab
