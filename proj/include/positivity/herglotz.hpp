#pragma once

// Herglotz waves (P_k f)(x) = \int_{S^1} e^{ik x.z} f(z) dz for trigonometric
// densities f, and their real Fourier-Bessel form
//   u(r, t) = a0 J_0(kr) + sum_m [ac_m cos(mt) + as_m sin(mt)] J_m(kr),
// with (r, t) polar coordinates about an expansion origin.
//
// By Jacobi-Anger the two are related by
//   c_0 = a0 / (2 pi),  c_{+-m} = (ac_m -+ i as_m) / (4 pi i^m).
// A wave or density with origin x0 denotes x -> (P_k f)(x - x0), which is
// again a Herglotz wave (density multiplied by e^{-ik x0.z}).

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "positivity/geometry.hpp"
#include "positivity/linalg.hpp"
#include "positivity/point.hpp"

namespace positivity::herglotz {

struct HerglotzDensity {
  double k = 1.0;
  int order = 0;  // M
  Point2 origin;
  std::vector<std::complex<double>> coeffs;  // c_m at index m + M, m = -M..M

  std::complex<double> coefficient(int m) const { return coeffs[static_cast<std::size_t>(m + order)]; }
  /// f(theta) = sum_m c_m e^{i m theta}.
  std::complex<double> operator()(double theta) const;
  /// sqrt(sum |c_m|^2).
  double coefficient_norm() const;
  /// Cauchy-Schwarz bound 2 pi sqrt(sum |c_m|^2) >= |f|_{L^1(S^1)}.
  double l1_bound() const;
};

struct FourierBesselWave {
  double k = 1.0;
  int order = 0;  // M
  Point2 origin;
  double a0 = 0.0;
  std::vector<double> ac;  // m = 1..M at index m - 1
  std::vector<double> as;

  static FourierBesselWave zero(double k, int order, Point2 origin = {});
  /// sqrt(a0^2 + sum ac_m^2 + as_m^2).
  double coefficient_norm() const;
};

/// Trapezoid rule with n_quad nodes for the integral over S^1. Throws
/// InputError when n_quad < minimum_quadrature_nodes.
std::vector<std::complex<double>> eval_quadrature(const HerglotzDensity& density, std::span<const Point2> points,
                                                  int n_quad);
/// max(64, 8 (k max|x - origin| + M)).
int minimum_quadrature_nodes(const HerglotzDensity& density, std::span<const Point2> points);

std::vector<double> eval_series(const FourierBesselWave& wave, std::span<const Point2> points);
double eval_series(const FourierBesselWave& wave, Point2 point);

/// Analytic gradient of the series.
Point2 gradient(const FourierBesselWave& wave, Point2 point);

HerglotzDensity to_density(const FourierBesselWave& wave);

/// k |f|_{L^1} bound on |grad u| over the whole plane, from the density.
double lipschitz_bound(const FourierBesselWave& wave);

struct FitReport {
  double residual_max = 0.0;  // on validation points disjoint from the fit points
  double residual_l2 = 0.0;   // discrete L2 norm of the validation misfit
  double collocation_residual_l2 = 0.0;
  int order_used = 0;
  std::string regularization;
  double coefficient_norm = 0.0;
  int effective_rank = 0;
  int n_fit = 0;
  int n_validation = 0;
};

struct Fit {
  FourierBesselWave wave;
  FitReport report;
};

/// Raised when the validation misfit exceeds the failure fraction of the target.
class FitFailed : public std::runtime_error {
 public:
  FitFailed(const std::string& what, Fit fit);
  const Fit& fit() const { return fit_; }
  const FitReport& report() const { return fit_.report; }

 private:
  Fit fit_;
};

/// ceil(k * circumradius about the centroid) + 10.
int default_order(const geometry::Domain2D& domain, double k);

struct BoundaryFitOptions {
  double k = 1.0;
  double target = 1.0;
  std::optional<int> order;  // default_order when empty
  std::optional<int> n_col;  // 4 (2M + 1), at least 64, when empty
  linalg::Mode mode = linalg::Tsvd{};
  bool override_gate = false;
  double failure_fraction = 0.05;
};

/// Least-squares fit of a real wave, expanded about the domain centroid, to
/// the constant target on the boundary. Validation uses 4 n_col boundary
/// points offset from the collocation. Throws helmholtz::GateFailure when the
/// Faber-Krahn gate fails without override; FitFailed when residual_max
/// exceeds failure_fraction * |target|.
Fit fit_boundary(const geometry::Domain2D& domain, const BoundaryFitOptions& options);

struct InteriorTarget {
  Point2 point;
  double value = 0.0;
};

struct InteriorFitOptions {
  double k = 1.0;
  std::optional<int> order;       // ceil(k max|x - origin|) + 10 when empty
  std::optional<Point2> origin;   // mean of the target points when empty
  linalg::Mode mode = linalg::QrPivot{};
  double failure_fraction = 0.05;
};

/// Fits a real wave to interior values. Every 10th target (indices 0, 10,
/// 20, ...) is held out for the report. Throws InputError when fewer fit
/// targets than unknowns remain; FitFailed when the held-out misfit exceeds
/// failure_fraction * max|value|.
Fit fit_interior(std::span<const InteriorTarget> targets, const InteriorFitOptions& options);

/// Comparison of u = P_k f with the leading far-field term
///   U(r x) = c' r^{-1/2} (e^{ikr} f(x) + i e^{-ikr} f(-x)),  c' = (2 pi / k)^{1/2} e^{-i pi/4},
/// and of d_r u with ik c' r^{-1/2} (e^{ikr} f(x) - i e^{-ikr} f(-x)).
struct FarFieldSample {
  double radius = 0.0;
  double value_deviation = 0.0;     // |u - U|
  double combined_deviation = 0.0;  // sqrt(|u - U|^2 + |d_r u - d_r U|^2 / k^2)
  double relative_error = 0.0;      // |u - U| / (|c'| r^{-1/2} (|f(x)| + |f(-x)|))
};

struct FarFieldReport {
  Point2 direction;
  std::vector<FarFieldSample> samples;
  /// p in combined_deviation ~ C r^{-p}, by log-log least squares.
  double decay_exponent = 0.0;
};

/// Requires radii >= 10/k. The density origin is the centre of the expansion.
FarFieldReport far_field(const HerglotzDensity& density, Point2 direction, std::span<const double> radii);
FarFieldReport far_field(const FourierBesselWave& wave, Point2 direction, std::span<const double> radii);

/// c' for n = 2.
std::complex<double> far_field_constant(double k);

}  // namespace positivity::herglotz
