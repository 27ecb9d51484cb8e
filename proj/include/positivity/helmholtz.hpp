#pragma once

// Interior Dirichlet problem (Delta + k^2) v = 0 in D, v = c0 on the boundary,
// solved with the method of fundamental solutions; the closed form on disks;
// the Faber-Krahn lower bound for the first Dirichlet eigenvalue.

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "positivity/geometry.hpp"
#include "positivity/linalg.hpp"
#include "positivity/point.hpp"

namespace positivity::helmholtz {

using geometry::Domain2D;

/// Faber-Krahn test of k^2 <= lambda_1(D). With rho the radius of the disk of
/// equal area, lambda_1(D) >= (j_{0,1}/rho)^2.
struct SpectralGate {
  double k = 0.0;
  double area = 0.0;
  bool area_is_upper_bound = false;
  double r_star = 0.0;  // j_{0,1} / k
  double lambda1_lower_bound = 0.0;
  bool passes = false;  // area <= pi r_star^2
  /// area equals pi r_star^2 to relative 1e-12.
  bool equality_case = false;
};

SpectralGate faber_krahn_gate(const Domain2D& domain, double k);

class GateFailure : public std::runtime_error {
 public:
  explicit GateFailure(SpectralGate gate);
  const SpectralGate& gate() const { return gate_; }

 private:
  SpectralGate gate_;
};

struct DirichletProblem {
  Domain2D domain;
  double k = 1.0;
  double c0 = 1.0;
};

struct MfsRepresentation {
  std::vector<Point2> charge_points;
  std::vector<std::complex<double>> charges;
  double k = 0.0;
};

/// v(x) = c0 J_0(k|x - centre|) / J_0(k R).
struct DiskClosedForm {
  Point2 center;
  double radius = 0.0;
  double k = 0.0;
  double c0 = 0.0;
};

struct InteriorSolution {
  std::variant<MfsRepresentation, DiskClosedForm> representation;
  Domain2D domain;
  double c0 = 0.0;
  /// max |v - c0| over a validation sampling independent of the collocation.
  double boundary_residual = 0.0;
  int effective_rank = 0;
  /// Gate did not certify k^2 < lambda_1(D); solved only because of an override.
  bool gate_overridden = false;
};

struct MfsOptions {
  int n_src = 128;
  int n_col = 512;
  /// Charges sit on the exterior parallel curve at distance dilation * diam(D).
  double dilation = 0.15;
  /// Failure when boundary_residual > tolerance * |c0|.
  double tolerance = 1e-6;
  bool override_gate = false;
  /// A slightly higher cut than lstsq's default keeps charges O(1e2) on polygons.
  linalg::Mode mode = linalg::Tsvd{1e-10};
};

/// Raised when the validation residual misses the tolerance.
class SolveFailed : public std::runtime_error {
 public:
  SolveFailed(const std::string& what, double residual, int effective_rank, bool near_eigenvalue);
  double residual() const { return residual_; }
  int effective_rank() const { return effective_rank_; }
  /// Independent evidence (the disk eigenvalue oracle) that k^2 is a Dirichlet eigenvalue.
  bool near_eigenvalue() const { return near_eigenvalue_; }

 private:
  double residual_;
  int effective_rank_;
  bool near_eigenvalue_;
};

/// Throws GateFailure when the gate fails without override, InputError on
/// invalid sizes, SolveFailed when the validation residual is too large.
InteriorSolution solve_dirichlet_mfs(const DirichletProblem& problem, const MfsOptions& options = {});

/// Exact solution on a disk. Throws SolveFailed when J_0(kR) vanishes to
/// working precision.
InteriorSolution disk_closed_form(const Domain2D& disk, double k, double c0);

/// True when k R is within relative `tolerance` of a zero j_{m,l} of some
/// J_m, m <= 20, i.e. k^2 is (nearly) a Dirichlet eigenvalue of the disk.
bool disk_near_dirichlet_eigenvalue(double radius, double k, double tolerance = 1e-6);

struct InteriorValues {
  std::vector<double> values;     // real part
  std::vector<double> imaginary;  // diagnostic; zero for the closed form
  double max_abs_imaginary = 0.0;
};

/// Throws InputError for points not strictly inside the domain.
InteriorValues evaluate_interior(const InteriorSolution& solution, std::span<const Point2> points);

/// Evaluation without the containment check (used by finite differences and
/// circle quadratures near the boundary).
double evaluate_unchecked(const InteriorSolution& solution, Point2 p);

struct StrongPositivityReport {
  int samples = 0;
  double min_value = 0.0;
  Point2 argmin;
  double max_abs_value = 0.0;
  /// c0 > 0 and every sample is positive.
  bool positive = false;
  /// c0 == 0 and every sample vanishes to within the boundary residual.
  bool identically_zero = false;
  bool passed = false;
};

/// Samples quasi-random interior points and witnesses the strong maximum
/// principle: either v > 0 throughout or v == 0. Requires gate.passes and c0 >= 0.
StrongPositivityReport check_strong_positivity(const InteriorSolution& solution, const SpectralGate& gate,
                                               int n_interior_samples);

/// |mean of u over the circle - u(center) J_0(k radius)| with n_quad-point
/// trapezoid quadrature. Vanishes for solutions of the Helmholtz equation on
/// a neighbourhood of the closed disk.
double mean_value_check(const std::function<double(Point2)>& u, Point2 center, double radius, double k,
                        int n_quad);

/// Five-point finite-difference (Delta + k^2) u at p with step h.
double helmholtz_residual_fd(const std::function<double(Point2)>& u, Point2 p, double k, double h = 1e-4);

}  // namespace positivity::helmholtz
