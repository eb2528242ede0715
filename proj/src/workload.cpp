#include "deltalab/workload.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string_view>

#include "deltalab/errors.hpp"

namespace deltalab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }
bool finite_pos(double v) { return std::isfinite(v) && v > 0.0; }

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// 1 - sin(x)/x without cancellation for small x.
double one_minus_sinc(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x2 / 6.0 - x2 * x2 / 120.0 + x2 * x2 * x2 / 5040.0;
  }
  return 1.0 - std::sin(x) / x;
}

Intensities sinusoid_mass(const intensity::Sinusoidal& s, double a, double b) {
  // With m the scaled midpoint and x the scaled half-width,
  //   int_a^b cos(wt) dt = h cos(m) sin(x)/x,
  // and 1 -/+ cos(m) sin(x)/x is rewritten to avoid cancellation.
  const double h = b - a;
  const double m = 0.5 * s.omega * (a + b);
  const double x = 0.5 * s.omega * h;
  const double sm = std::sin(0.5 * m);
  const double cm = std::cos(0.5 * m);
  const double tail = std::cos(m) * one_minus_sinc(x);
  const double reads = 0.5 * s.W * h * (2.0 * sm * sm + tail);
  const double writes = 0.5 * s.W * h * (2.0 * cm * cm - tail);
  return {std::max(reads, 0.0), std::max(writes, 0.0)};
}

Intensities interpolate(const intensity::Breakpoint& lo, const intensity::Breakpoint& hi,
                        double t) {
  const double w = (t - lo.t) / (hi.t - lo.t);
  return {lo.n_r + w * (hi.n_r - lo.n_r), lo.n_w + w * (hi.n_w - lo.n_w)};
}

Intensities piecewise_at(const intensity::Piecewise& p, double t) {
  const auto& bp = p.breakpoints;
  if (t < bp.front().t || t > bp.back().t) {
    std::ostringstream os;
    os << "t = " << t << " outside piecewise domain [" << bp.front().t << ", "
       << bp.back().t << "]";
    throw ValidationError(os.str());
  }
  auto it = std::upper_bound(bp.begin(), bp.end(), t,
                             [](double v, const intensity::Breakpoint& b) { return v < b.t; });
  if (it == bp.end()) return {bp.back().n_r, bp.back().n_w};
  return interpolate(*(it - 1), *it, t);
}

Intensities piecewise_mass(const intensity::Piecewise& p, double a, double b) {
  // exact integral of the linear interpolant: trapezoids split at breakpoints
  std::vector<double> cuts{a};
  for (const auto& bp : p.breakpoints) {
    if (bp.t > a && bp.t < b) cuts.push_back(bp.t);
  }
  cuts.push_back(b);
  Intensities mass;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    const Intensities lo = piecewise_at(p, cuts[i - 1]);
    const Intensities hi = piecewise_at(p, cuts[i]);
    const double h = cuts[i] - cuts[i - 1];
    mass.n_r += 0.5 * h * (lo.n_r + hi.n_r);
    mass.n_w += 0.5 * h * (lo.n_w + hi.n_w);
  }
  return mass;
}

void validate_trace_samples(const std::vector<TickSample>& samples) {
  if (samples.empty()) throw ValidationError("trace has no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const TickSample& s = samples[i];
    if (!std::isfinite(s.t) || !finite_pos(s.dt) || !finite_nonneg(s.read_mass) ||
        !finite_nonneg(s.write_mass)) {
      throw ValidationError("trace sample " + std::to_string(i) +
                            " has invalid time, width or mass");
    }
    if (i > 0) {
      const TickSample& prev = samples[i - 1];
      if (!(s.t > prev.t)) {
        throw ValidationError("trace sample " + std::to_string(i) + " is not sorted by t");
      }
      if (!close(s.dt, prev.dt)) {
        throw ValidationError("trace dt is not constant at sample " + std::to_string(i));
      }
      if (!close(prev.t + prev.dt, s.t)) {
        throw ValidationError("trace has a gap before sample " + std::to_string(i));
      }
    }
  }
}

}  // namespace

void validate(const IntensitySpec& spec) {
  std::visit(
      overloaded{
          [](const intensity::Sinusoidal& s) {
            if (!finite_pos(s.W) || !finite_pos(s.omega)) {
              throw ValidationError("sinusoidal workload needs positive finite W and omega");
            }
          },
          [](const intensity::Constant& c) {
            if (!finite_nonneg(c.n_r) || !finite_nonneg(c.n_w)) {
              throw ValidationError("constant intensities must be finite and non-negative");
            }
          },
          [](const intensity::Piecewise& p) {
            if (p.breakpoints.size() < 2) {
              throw ValidationError("piecewise workload needs at least two breakpoints");
            }
            for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
              const auto& b = p.breakpoints[i];
              if (!std::isfinite(b.t) || !finite_nonneg(b.n_r) || !finite_nonneg(b.n_w)) {
                throw ValidationError("invalid piecewise breakpoint " + std::to_string(i));
              }
              if (i > 0 && !(b.t > p.breakpoints[i - 1].t)) {
                throw ValidationError("piecewise breakpoints must be strictly increasing in t");
              }
            }
          },
          [](const intensity::Trace& tr) { validate_trace_samples(tr.samples); },
      },
      spec);
}

Intensities intensities_at(const IntensitySpec& spec, double t) {
  return std::visit(
      overloaded{
          [t](const intensity::Sinusoidal& s) -> Intensities {
            const double c = std::cos(s.omega * t);
            return {0.5 * s.W * (1.0 - c), 0.5 * s.W * (1.0 + c)};
          },
          [](const intensity::Constant& c) -> Intensities { return {c.n_r, c.n_w}; },
          [t](const intensity::Piecewise& p) -> Intensities { return piecewise_at(p, t); },
          [t](const intensity::Trace& tr) -> Intensities {
            const auto& s = tr.samples;
            if (s.empty() || t < s.front().t || t > s.back().t + s.back().dt) {
              throw ValidationError("t = " + std::to_string(t) + " outside trace domain");
            }
            auto it = std::upper_bound(s.begin(), s.end(), t,
                                       [](double v, const TickSample& x) { return v < x.t; });
            const TickSample& tick = *(it - 1);
            return {tick.read_mass / tick.dt, tick.write_mass / tick.dt};
          },
      },
      spec);
}

Discretization discretize(const IntensitySpec& spec, double t0, double horizon, double dt,
                          DiscretizeMode mode) {
  if (!finite_pos(dt)) throw ValidationError("dt must be finite and positive");
  if (!finite_pos(horizon)) throw ValidationError("horizon must be finite and positive");
  if (!std::isfinite(t0)) throw ValidationError("t0 must be finite");
  validate(spec);

  Discretization out;
  if (const auto* tr = std::get_if<intensity::Trace>(&spec)) {
    const double end = t0 + horizon;
    const double tol = 1e-9 * std::max(1.0, std::abs(end));
    for (const TickSample& s : tr->samples) {
      if (s.t >= t0 - tol && s.t + s.dt <= end + tol) out.ticks.push_back(s);
    }
    if (out.ticks.empty()) {
      throw ValidationError("trace has no samples inside the requested window");
    }
    if (!close(out.ticks.front().dt, dt)) {
      out.warnings.push_back("trace dt differs from requested dt; trace ticks are used as-is");
    }
  } else {
    if (const auto* s = std::get_if<intensity::Sinusoidal>(&spec)) {
      const double period = 2.0 * std::numbers::pi / s->omega;
      if (dt > period / 100.0) {
        out.warnings.push_back("dt is coarser than period/100; switch times will be coarse");
      }
    }
    const double q = horizon / dt;
    const double nearest = std::round(q);
    const auto n = static_cast<std::size_t>(
        std::abs(q - nearest) <= 1e-9 * std::max(1.0, q) ? nearest : std::ceil(q));
    out.ticks.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = t0 + static_cast<double>(k) * dt;
      const double b = k + 1 == n ? t0 + horizon : t0 + static_cast<double>(k + 1) * dt;
      const Intensities m = std::visit(
          overloaded{
              [a, b](const intensity::Sinusoidal& s) { return sinusoid_mass(s, a, b); },
              [a, b](const intensity::Constant& c) {
                return Intensities{c.n_r * (b - a), c.n_w * (b - a)};
              },
              [a, b](const intensity::Piecewise& p) { return piecewise_mass(p, a, b); },
              [](const intensity::Trace&) { return Intensities{}; },
          },
          spec);
      out.ticks.push_back(TickSample{a, b - a, m.n_r, m.n_w});
    }
  }

  if (mode == DiscretizeMode::IntegerLargestRemainder) {
    double cum_r = 0.0, cum_w = 0.0;
    long long prev_r = 0, prev_w = 0;
    for (TickSample& tick : out.ticks) {
      cum_r += tick.read_mass;
      cum_w += tick.write_mass;
      const long long r = std::llround(cum_r);
      const long long w = std::llround(cum_w);
      tick.read_mass = static_cast<double>(r - prev_r);
      tick.write_mass = static_cast<double>(w - prev_w);
      prev_r = r;
      prev_w = w;
    }
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

intensity::Trace load_trace(std::istream& in) {
  intensity::Trace trace;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  auto fail = [&](const std::string& what) {
    throw ValidationError("trace row " + std::to_string(line_no) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      if (row != "t,dt,reads,writes") fail("expected header 't,dt,reads,writes'");
      header_seen = true;
      continue;
    }
    double fields[4];
    for (int i = 0; i < 4; ++i) {
      const auto comma = row.find(',');
      if ((comma == std::string_view::npos) != (i == 3)) fail("expected 4 fields");
      const std::string_view cell = trim(row.substr(0, comma));
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), fields[i]);
      if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        fail("malformed number '" + std::string(cell) + "'");
      }
      if (comma != std::string_view::npos) row.remove_prefix(comma + 1);
    }
    const TickSample s{fields[0], fields[1], fields[2], fields[3]};
    if (!std::isfinite(s.t)) fail("non-finite t");
    if (!finite_pos(s.dt)) fail("dt must be positive");
    if (!finite_nonneg(s.read_mass)) fail("negative or non-finite reads");
    if (!finite_nonneg(s.write_mass)) fail("negative or non-finite writes");
    if (!trace.samples.empty()) {
      const TickSample& prev = trace.samples.back();
      if (!(s.t > prev.t)) fail("times not sorted");
      if (!close(s.dt, prev.dt)) fail("dt differs from previous rows");
      if (!close(prev.t + prev.dt, s.t)) fail("gap between consecutive samples");
    }
    trace.samples.push_back(s);
  }
  if (trace.samples.empty()) throw ValidationError("trace: no samples");
  return trace;
}

}  // namespace deltalab
