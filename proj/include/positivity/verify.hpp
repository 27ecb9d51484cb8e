#pragma once

// Positivity certificates for waves on boundaries and target sets, and
// checkers for the necessary conditions on sign changes of real solutions.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "positivity/geometry.hpp"
#include "positivity/herglotz.hpp"

namespace positivity::verify {

using herglotz::FourierBesselWave;

/// Every point within distance rho of a sample satisfies u >= min_sample -
/// lipschitz_bound * rho. On a boundary sampling rho = max_gap / 2.
struct PositivityCertificate {
  int n_samples = 0;
  double min_sample = 0.0;
  Point2 argmin;
  double lipschitz_bound = 0.0;  // k |f|_{L^1} bound, 2 pi k sqrt(sum |c_m|^2)
  double max_gap = 0.0;
  double coverage_radius = 0.0;  // rho
  double certified_margin = 0.0;  // min_sample - lipschitz_bound * rho
  bool certified = false;         // certified_margin > 0
};

PositivityCertificate certify_positive(const FourierBesselWave& wave, const geometry::BoundarySampling& sampling);

/// Pointwise certificate on E. max_gap reports the largest distance between
/// consecutive points of the supplied ordering; the Lipschitz term uses
/// `lipschitz_radius` (0 for a finite set, half the spacing for a sampled curve).
PositivityCertificate certify_positive_on_set(const FourierBesselWave& wave, const geometry::TargetSet& set,
                                              double lipschitz_radius = 0.0);

/// max |u(x_{i+1}) - u(x_i)| / |x_{i+1} - x_i| over consecutive samples.
double max_difference_quotient(const FourierBesselWave& wave, const geometry::BoundarySampling& sampling);

/// Largest sampled |grad u|. A diagnostic only: not a bound between samples.
double sampled_gradient_max(const FourierBesselWave& wave, std::span<const Point2> points);

struct SignChangeReport {
  int m = 0;
  double circle_radius = 0.0;  // j_{0,m} / k about the wave origin
  double min_on_circle = 0.0;
  double max_on_circle = 0.0;
  bool changes_sign = false;   // min * max < 0 and not vanishes_on_circle
  /// max |u| on the circle <= 1e-10 * coefficient norm (e.g. radial waves).
  bool vanishes_on_circle = false;
  /// \oint u d_r v dS with v = J_0(k|x|); zero for every Helmholtz solution.
  double flux_integral = 0.0;
};

/// Requires a nonzero wave. Throws InputError otherwise.
SignChangeReport sign_change_on_circle(const FourierBesselWave& wave, int m, int n_samples);

struct ZeroScan {
  bool found = false;
  Point2 positive_point;
  Point2 negative_point;
  bool identically_small = false;  // wave vanishes to working precision
  int points_scanned = 0;
};

/// Grid scan (spacing grid_step, centred on `center`) of the closed ball for
/// two points of opposite sign.
ZeroScan scan_for_zero(const FourierBesselWave& wave, Point2 center, double radius, double grid_step);

/// Real wave with standard normal coefficients a0, ac_m, as_m.
FourierBesselWave random_wave(double k, int order, std::mt19937_64& rng, Point2 origin = {});

}  // namespace positivity::verify
