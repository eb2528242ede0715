#include "deltalab/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "deltalab/errors.hpp"

namespace deltalab {

namespace {

constexpr double pi = std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw ValidationError(std::string(name) + " must be finite and positive");
  }
}

void require_eq6_domain(double sc) {
  if (!std::isfinite(sc) || !(sc > 0.0) || !(sc < 2.0)) {
    throw ValidationError("normalized switching cost must lie in (0, 2), got " +
                          std::to_string(sc));
  }
}

double gk_integrate(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

DeltaFormula DeltaFormula::model(int n_clients, double W, double omega) {
  if (n_clients < 1) throw ValidationError("n_clients must be at least 1");
  require_positive(W, "W");
  require_positive(omega, "omega");
  return {Kind::ModelConsistent, n_clients, W, omega};
}

DeltaFormula DeltaFormula::paper(int n_clients, double W, double omega) {
  require_positive(W, "W");
  require_positive(omega, "omega");
  switch (n_clients) {
    case 2: return {Kind::PaperN2, 2, W, omega};
    case 3: return {Kind::PaperN3, 3, W, omega};
    case 10: return {Kind::PaperN10, 10, W, omega};
    default:
      throw ValidationError("printed delta curves exist only for 2, 3 and 10 clients");
  }
}

double DeltaFormula::operator()(double t) const {
  switch (kind) {
    case Kind::ModelConsistent: return delta_model(n_clients, W, omega, t);
    case Kind::PaperN2: return delta_paper(PaperCurve::N2, W, omega, t);
    case Kind::PaperN3: return delta_paper(PaperCurve::N3, W, omega, t);
    case Kind::PaperN10: return delta_paper(PaperCurve::N10, W, omega, t);
  }
  return 0.0;
}

bool DeltaFormula::periodic() const noexcept {
  switch (kind) {
    case Kind::ModelConsistent: return n_clients == 2;
    case Kind::PaperN2:
    case Kind::PaperN3: return true;
    case Kind::PaperN10: return false;
  }
  return false;
}

double DeltaFormula::period() const noexcept { return 2.0 * pi / omega; }

double delta_model(int n_clients, double W, double omega, double t) {
  const double n = static_cast<double>(n_clients);
  return 0.5 * W * ((2.0 - n) * t - ((n + 2.0) / omega) * std::sin(omega * t));
}

double delta_paper(PaperCurve which, double W, double omega, double t) {
  const double x = omega * t;
  switch (which) {
    case PaperCurve::N2: return -2.0 * (W / omega) * std::sin(x);
    case PaperCurve::N3: return -(2.0 * W / omega) * std::sin(x) * (1.0 + std::cos(x));
    case PaperCurve::N10:
      return 0.5 * (W / omega) * (2.0 * std::cos(x) - 11.0 * std::sin(x) - 9.0 * x - 2.0);
  }
  return 0.0;
}

std::vector<double> predicted_switch_times(double W, double omega, double sc_round_trip,
                                           ImplSlot start, double horizon) {
  require_positive(W, "W");
  require_positive(omega, "omega");
  require_positive(sc_round_trip, "switching cost");
  if (!std::isfinite(horizon) || !(horizon > 0.0)) {
    throw ValidationError("horizon must be positive");
  }
  const double amplitude = 2.0 * W / omega;
  const double u = sc_round_trip / amplitude;
  std::vector<double> times;
  if (u > 2.0) return times;

  // Phases of the switches. Once the policy is in its periodic regime, every
  // nonsub -> sub switch sits on the rising branch after a minimum of
  // -A sin(x), every sub -> nonsub switch on the falling branch after a maximum.
  const double to_sub = pi - std::asin(1.0 - u);
  const double to_nonsub = 2.0 * pi + std::asin(u - 1.0);

  std::vector<double> phases;
  const double last_phase = omega * horizon;
  auto push_cycle = [&](double base, bool include_to_sub) {
    if (include_to_sub) phases.push_back(base + to_sub);
    phases.push_back(base + to_nonsub);
  };
  if (start == ImplSlot::Second && u <= 1.0) {
    // still on the first rise of A sin(x) from zero
    phases.push_back(std::asin(u));
  }
  const bool skip_first_to_sub = start == ImplSlot::Second && u > 1.0;
  for (int m = 0; 2.0 * pi * m <= last_phase; ++m) {
    push_cycle(2.0 * pi * m, !(m == 0 && skip_first_to_sub));
  }
  for (double ph : phases) {
    const double t = ph / omega;
    if (t > 0.0 && t <= horizon) times.push_back(t);
  }
  return times;
}

std::vector<double> predicted_switch_times_numeric(const std::function<double(double)>& delta,
                                                   double sc_round_trip, ImplSlot start,
                                                   double t0, double horizon, double step) {
  require_positive(sc_round_trip, "switching cost");
  require_positive(step, "step");
  if (!std::isfinite(horizon) || !(horizon > 0.0)) {
    throw ValidationError("horizon must be positive");
  }
  const double end = t0 + horizon;
  std::vector<double> times;

  double sign = start == ImplSlot::First ? 1.0 : -1.0;
  double origin = t0;
  double ref = delta(t0);
  double running_min = 0.0;
  double argmin = t0;
  bool min_refined = true;
  double prev_t = t0;
  auto level = [&](double x) { return sign * (delta(x) - ref); };
  constexpr int bits = std::numeric_limits<double>::digits / 2;

  for (std::size_t i = 1;; ++i) {
    const double t = std::min(origin + static_cast<double>(i) * step, end);
    const double v = level(t);
    if (v < running_min) {
      running_min = v;
      argmin = t;
      min_refined = false;
    }
    if (v - running_min >= sc_round_trip && !min_refined) {
      // the grid minimum sits up to O(step^2) above the true one
      const double lo = std::max(origin, argmin - step);
      const double hi = std::min(t, argmin + step);
      const auto r = boost::math::tools::brent_find_minima(level, lo, hi, bits);
      running_min = std::min(running_min, r.second);
      min_refined = true;
    }
    if (v - running_min >= sc_round_trip) {
      const double floor = running_min;
      auto excess = [&](double x) { return level(x) - floor - sc_round_trip; };
      double lo = prev_t, hi = t;
      while (lo > origin && excess(lo) >= 0.0) lo = std::max(origin, lo - step);
      while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) >= 0.0 ? hi : lo) = mid;
      }
      times.push_back(hi);
      sign = -sign;
      origin = hi;
      ref = delta(hi);
      running_min = 0.0;
      argmin = hi;
      min_refined = true;
      prev_t = hi;
      i = 0;
      continue;
    }
    if (t >= end) break;
    prev_t = t;
  }
  return times;
}

double eq6_cost(double sc) {
  require_eq6_domain(sc);
  return 15.0 * pi / 4.0 - 4.5 + 4.0 * sc;
}

Eq6SwitchPoints eq6_switch_points(double sc) {
  require_eq6_domain(sc);
  const double a = std::asin(sc - 1.0);
  return {pi + a, 2.0 * pi + a};
}

double eq6_integrals(double sc) {
  const Eq6SwitchPoints sw = eq6_switch_points(sc);
  const std::function<double(double)> nonsub = [](double t) { return 1.5 - 0.5 * std::cos(t); };
  const std::function<double(double)> sub = [](double t) { return 1.5 + 1.5 * std::cos(t); };
  return gk_integrate(nonsub, 0.0, pi / 2.0) + gk_integrate(nonsub, pi / 2.0, sw.to_sub) +
         gk_integrate(sub, sw.to_sub, 1.5 * pi) + gk_integrate(sub, 1.5 * pi, sw.to_nonsub) +
         gk_integrate(nonsub, sw.to_nonsub, 2.5 * pi);
}

Eq6Bounds eq6_bounds() noexcept { return {15.0 * pi / 4.0 - 4.5, 15.0 * pi / 4.0 + 3.5}; }

double parabola(double d1, double d2, double t) noexcept { return 0.5 * d2 * t * t + d1 * t; }

CriterionVerdict criterion7(double d1, double d2, double sc_round_trip) {
  require_positive(sc_round_trip, "switching cost");
  CriterionVerdict v;
  v.lhs = std::abs(d1);
  v.rhs = 2.0 * std::sqrt(sc_round_trip * std::abs(d2));
  v.holds = v.lhs > v.rhs;
  return v;
}

DerivativeEstimate estimate_derivatives(std::span<const SeriesPoint> series, double t0,
                                        double window) {
  require_positive(window, "window");
  const double half = 0.5 * window;
  const double tol = 1e-12 * std::max(1.0, std::abs(t0) + half);
  std::vector<SeriesPoint> used;
  for (const SeriesPoint& p : series) {
    if (std::abs(p.t - t0) <= half + tol) used.push_back(p);
  }
  if (used.size() < 5) {
    throw ValidationError("derivative estimate needs at least 5 samples in the window, got " +
                          std::to_string(used.size()));
  }

  // Scaled, centred abscissa keeps the Vandermonde matrix well conditioned.
  Eigen::MatrixXd A(used.size(), 3);
  Eigen::VectorXd y(used.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    const double s = (used[i].t - t0) / half;
    A(static_cast<Eigen::Index>(i), 0) = 1.0;
    A(static_cast<Eigen::Index>(i), 1) = s;
    A(static_cast<Eigen::Index>(i), 2) = s * s;
    y(static_cast<Eigen::Index>(i)) = used[i].value;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  if (qr.rank() < 3) {
    throw ValidationError("derivative estimate needs at least 3 distinct sample times");
  }
  const Eigen::Vector3d coef = qr.solve(y);

  DerivativeEstimate est;
  est.d1 = coef(1) / half;
  est.d2 = 2.0 * coef(2) / (half * half);
  est.t0 = t0;
  est.window = window;
  est.samples_used = used.size();
  return est;
}

double double_amplitude(const DeltaFormula& formula) {
  if (!formula.periodic()) {
    throw ValidationError("double amplitude is defined only for periodic delta curves");
  }
  const double period = formula.period();
  constexpr std::size_t n = 20000;
  const double h = period / static_cast<double>(n);
  std::size_t imax = 0, imin = 0;
  double vmax = -std::numeric_limits<double>::infinity();
  double vmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    const double v = formula(static_cast<double>(i) * h);
    if (v > vmax) { vmax = v; imax = i; }
    if (v < vmin) { vmin = v; imin = i; }
  }
  constexpr int bits = std::numeric_limits<double>::digits / 2;
  auto refine = [&](std::size_t i, double sign) {
    const double a = (static_cast<double>(i) - 1.0) * h;
    const double b = (static_cast<double>(i) + 1.0) * h;
    const auto r = boost::math::tools::brent_find_minima(
        [&](double t) { return sign * formula(t); }, a, b, bits);
    return sign * r.second;
  };
  const double top = std::max(vmax, refine(imax, -1.0));
  const double bottom = std::min(vmin, refine(imin, 1.0));
  return top - bottom;
}

double max_rise(const std::function<double(double)>& f, double a, double b,
                std::size_t samples) {
  if (!(b > a) || samples < 2) throw ValidationError("max_rise needs b > a and 2+ samples");
  const double h = (b - a) / static_cast<double>(samples - 1);
  double lowest = f(a);
  double best = 0.0;
  for (std::size_t i = 1; i < samples; ++i) {
    const double v = f(a + static_cast<double>(i) * h);
    best = std::max(best, v - lowest);
    lowest = std::min(lowest, v);
  }
  return best;
}

}  // namespace deltalab
