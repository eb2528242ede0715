#pragma once

#include <functional>
#include <span>
#include <vector>

#include "deltalab/switcher.hpp"

namespace deltalab {

/// Accumulated cost difference nonsub - sub under the sinusoidal workload,
/// in closed form. ModelConsistent is the exact integral of the pub/sub cost
/// rates; the Paper* kinds evaluate the printed curves for N = 2, 3, 10
/// verbatim, including where they disagree with the integral.
struct DeltaFormula {
  enum class Kind { ModelConsistent, PaperN2, PaperN3, PaperN10 };

  Kind kind = Kind::ModelConsistent;
  int n_clients = 2;
  double W = 1.0;
  double omega = 1.0;

  static DeltaFormula model(int n_clients, double W, double omega);
  static DeltaFormula paper(int n_clients, double W, double omega);  // n in {2, 3, 10}

  double operator()(double t) const;
  bool periodic() const noexcept;
  double period() const noexcept;
};

/// (W/2) [ (2 - N) t - ((N + 2)/omega) sin(omega t) ]
double delta_model(int n_clients, double W, double omega, double t);

enum class PaperCurve { N2, N3, N10 };
double delta_paper(PaperCurve which, double W, double omega, double t);

/// Switch times of the delta algorithm on the two-client sinusoidal workload
/// (policy started at t = 0), in closed form. Times lie in (0, horizon] and
/// alternate direction. Empty when sc exceeds the peak-to-peak 4W/omega.
std::vector<double> predicted_switch_times(double W, double omega, double sc_round_trip,
                                           ImplSlot start, double horizon);

/// Same question for an arbitrary delta curve: marches on a grid of `step`,
/// brackets the first grid point where the recovery from the running minimum
/// reaches sc and bisects to 1e-10. Tangential touches between grid points
/// are not detected.
std::vector<double> predicted_switch_times_numeric(const std::function<double(double)>& delta,
                                                   double sc_round_trip, ImplSlot start,
                                                   double t0, double horizon, double step);

/// Accumulated cost over [0, 5pi/2] in normalized units (W = omega = 1) with
/// switches at pi + asin(sc - 1) and 2pi + asin(sc - 1): 15pi/4 - 9/2 + 4 sc.
double eq6_cost(double sc);
/// The same quantity by Gauss-Kronrod quadrature of the five pieces.
double eq6_integrals(double sc);

struct Eq6Bounds {
  double ideal = 0.0;  // sc -> 0
  double worst = 0.0;  // sc -> 2
};
Eq6Bounds eq6_bounds() noexcept;

/// Switch points used by eq6_*, in normalized time.
struct Eq6SwitchPoints {
  double to_sub = 0.0;
  double to_nonsub = 0.0;
};
Eq6SwitchPoints eq6_switch_points(double sc);

double parabola(double d1, double d2, double t) noexcept;

struct CriterionVerdict {
  bool holds = false;
  double lhs = 0.0;  // |d1|
  double rhs = 0.0;  // 2 sqrt(sc |d2|)
};

/// Sufficient condition |d1| > 2 sqrt(SC |d2|) for a monotone excursion of 2 SC.
CriterionVerdict criterion7(double d1, double d2, double sc_round_trip);

struct SeriesPoint {
  double t = 0.0;
  double value = 0.0;
};

struct DerivativeEstimate {
  double d1 = 0.0;
  double d2 = 0.0;
  double t0 = 0.0;
  double window = 0.0;
  std::size_t samples_used = 0;
};

/// Least-squares quadratic fit to the samples within t0 +- window/2.
/// Needs at least five of them.
DerivativeEstimate estimate_derivatives(std::span<const SeriesPoint> series, double t0,
                                        double window);

/// max - min of a periodic formula over one period (dense sampling plus
/// Brent refinement). Rejects curves with a drift term.
double double_amplitude(const DeltaFormula& formula);

/// Largest rise f(t2) - f(t1), t1 <= t2, on [a, b]: the most the delta
/// algorithm's recovery can reach there.
double max_rise(const std::function<double(double)>& f, double a, double b,
                std::size_t samples = 200001);

}  // namespace deltalab
