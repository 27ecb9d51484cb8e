#include "positivity/helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "positivity/errors.hpp"
#include "positivity/specfun.hpp"

namespace positivity::helmholtz {

namespace {

using specfun::Order;
constexpr double kPi = std::numbers::pi;

std::string gate_message(const SpectralGate& g) {
  std::ostringstream os;
  os.precision(10);
  os << "Faber-Krahn gate fails: |D| = " << g.area << " > pi (j_{0,1}/k)^2 = " << kPi * g.r_star * g.r_star
     << " at k = " << g.k << "; k^2 may reach the first Dirichlet eigenvalue";
  return os.str();
}

std::complex<double> mfs_value(const MfsRepresentation& m, Point2 p) {
  std::complex<double> sum = 0.0;
  for (std::size_t j = 0; j < m.charges.size(); ++j) {
    sum += m.charges[j] * specfun::fundamental_solution(m.k, p - m.charge_points[j]);
  }
  return sum;
}

std::complex<double> value_of(const InteriorSolution& s, Point2 p) {
  if (const auto* m = std::get_if<MfsRepresentation>(&s.representation)) return mfs_value(*m, p);
  const auto& d = std::get<DiskClosedForm>(s.representation);
  const double r = distance(p, d.center);
  return d.c0 * specfun::bessel_j(Order(0), d.k * r) / specfun::bessel_j(Order(0), d.k * d.radius);
}

}  // namespace

GateFailure::GateFailure(SpectralGate gate) : std::runtime_error(gate_message(gate)), gate_(gate) {}

SolveFailed::SolveFailed(const std::string& what, double residual, int effective_rank, bool near_eigenvalue)
    : std::runtime_error(what), residual_(residual), effective_rank_(effective_rank),
      near_eigenvalue_(near_eigenvalue) {}

SpectralGate faber_krahn_gate(const Domain2D& domain, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("faber_krahn_gate: k must be positive");
  const geometry::AreaInfo a = geometry::area_info(domain);
  const double j01 = specfun::bessel_zero(Order(0), 1);
  SpectralGate g;
  g.k = k;
  g.area = a.value;
  g.area_is_upper_bound = a.upper_bound;
  g.r_star = j01 / k;
  const double rho = std::sqrt(a.value / kPi);
  g.lambda1_lower_bound = (j01 / rho) * (j01 / rho);
  const double threshold = kPi * g.r_star * g.r_star;
  g.passes = a.value <= threshold;
  g.equality_case = std::abs(a.value - threshold) <= 1e-12 * threshold;
  return g;
}

bool disk_near_dirichlet_eigenvalue(double radius, double k, double tolerance) {
  const double kr = k * radius;
  for (int m = 0; m <= 20; ++m) {
    for (int l = 1;; ++l) {
      const double z = specfun::bessel_zero(Order::integer(m), l);
      if (std::abs(z - kr) <= tolerance * kr) return true;
      if (z > kr * (1.0 + tolerance)) break;
    }
  }
  return false;
}

InteriorSolution solve_dirichlet_mfs(const DirichletProblem& problem, const MfsOptions& opt) {
  if (!(problem.k > 0.0) || !std::isfinite(problem.k)) throw InputError("solve_dirichlet_mfs: k must be positive");
  if (!std::isfinite(problem.c0)) throw InputError("solve_dirichlet_mfs: c0 must be finite");
  if (opt.n_src < 16 || opt.n_col < 2 * opt.n_src) {
    throw InputError("solve_dirichlet_mfs: need n_col >= 2 n_src >= 32");
  }
  if (!(opt.dilation > 0.0)) throw InputError("solve_dirichlet_mfs: dilation must be positive");

  const SpectralGate gate = faber_krahn_gate(problem.domain, problem.k);
  if (!gate.passes && !opt.override_gate) throw GateFailure(gate);

  const double offset = opt.dilation * geometry::diameter(problem.domain);
  MfsRepresentation rep;
  rep.k = problem.k;
  rep.charge_points = geometry::exterior_offset_points(problem.domain, offset, opt.n_src);
  const std::vector<Point2> col = geometry::collocation_points(problem.domain, opt.n_col);

  linalg::ComplexMatrix a(static_cast<Eigen::Index>(col.size()), static_cast<Eigen::Index>(rep.charge_points.size()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      a(i, j) = specfun::fundamental_solution(problem.k, col[i] - rep.charge_points[j]);
    }
  }
  const linalg::ComplexVector b = linalg::ComplexVector::Constant(a.rows(), problem.c0);
  const linalg::ComplexLeastSquaresSolution sol = linalg::lstsq(a, b, opt.mode);
  rep.charges.assign(sol.coefficients.data(), sol.coefficients.data() + sol.coefficients.size());

  InteriorSolution out{rep, problem.domain, problem.c0, 0.0, sol.effective_rank, !gate.passes};
  for (const Point2& p : geometry::validation_points(problem.domain, 4 * opt.n_col)) {
    out.boundary_residual = std::max(out.boundary_residual, std::abs(mfs_value(rep, p) - problem.c0));
  }

  const double tolerance = opt.tolerance * std::abs(problem.c0);
  if (!(out.boundary_residual <= tolerance)) {
    bool near = false;
    if (const auto* d = std::get_if<geometry::Disk>(&problem.domain.shape())) {
      near = disk_near_dirichlet_eigenvalue(d->radius, problem.k);
    }
    std::ostringstream os;
    os.precision(6);
    os << (near ? "near Dirichlet eigenvalue" : "ill-resolved or near-eigenvalue")
       << ": boundary residual " << out.boundary_residual << " exceeds " << tolerance
       << " (effective rank " << sol.effective_rank << " of " << 2 * a.cols() << ")";
    throw SolveFailed(os.str(), out.boundary_residual, sol.effective_rank, near);
  }
  return out;
}

InteriorSolution disk_closed_form(const Domain2D& disk, double k, double c0) {
  const auto* d = std::get_if<geometry::Disk>(&disk.shape());
  if (d == nullptr) throw InputError("disk_closed_form: domain is not a disk");
  if (!(k > 0.0)) throw InputError("disk_closed_form: k must be positive");
  const double denom = specfun::bessel_j(Order(0), k * d->radius);
  if (std::abs(denom) < 1e-14) {
    throw SolveFailed("near Dirichlet eigenvalue: J_0(kR) vanishes", std::abs(c0), 0, true);
  }
  return InteriorSolution{DiskClosedForm{d->center, d->radius, k, c0}, disk, c0, 0.0, 1, false};
}

InteriorValues evaluate_interior(const InteriorSolution& solution, std::span<const Point2> points) {
  InteriorValues out;
  out.values.reserve(points.size());
  out.imaginary.reserve(points.size());
  for (const Point2& p : points) {
    if (!geometry::contains(solution.domain, p)) {
      std::ostringstream os;
      os << "evaluate_interior: point (" << p.x << ", " << p.y << ") is not inside the domain";
      throw InputError(os.str());
    }
    const std::complex<double> v = value_of(solution, p);
    out.values.push_back(v.real());
    out.imaginary.push_back(v.imag());
    out.max_abs_imaginary = std::max(out.max_abs_imaginary, std::abs(v.imag()));
  }
  return out;
}

double evaluate_unchecked(const InteriorSolution& solution, Point2 p) { return value_of(solution, p).real(); }

StrongPositivityReport check_strong_positivity(const InteriorSolution& solution, const SpectralGate& gate,
                                               int n_interior_samples) {
  if (!gate.passes) throw InputError("check_strong_positivity: requires a passing spectral gate");
  if (solution.c0 < 0.0) throw InputError("check_strong_positivity: requires c0 >= 0");
  if (n_interior_samples < 1) throw InputError("check_strong_positivity: need at least one sample");

  const std::vector<Point2> pts = geometry::interior_samples(solution.domain, n_interior_samples);
  const InteriorValues v = evaluate_interior(solution, pts);
  StrongPositivityReport r;
  r.samples = static_cast<int>(pts.size());
  r.min_value = v.values.front();
  r.argmin = pts.front();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (v.values[i] < r.min_value) {
      r.min_value = v.values[i];
      r.argmin = pts[i];
    }
    r.max_abs_value = std::max(r.max_abs_value, std::abs(v.values[i]));
  }
  if (solution.c0 > 0.0) {
    r.positive = r.min_value > 0.0;
    r.passed = r.positive;
  } else {
    // Interior values are bounded by the boundary misfit (maximum principle below lambda_1).
    r.identically_zero = r.max_abs_value <= std::max(solution.boundary_residual, 1e-14);
    r.passed = r.identically_zero;
  }
  return r;
}

double mean_value_check(const std::function<double(Point2)>& u, Point2 center, double radius, double k,
                        int n_quad) {
  if (n_quad < 1) throw InputError("mean_value_check: n_quad must be positive");
  double sum = 0.0;
  for (int j = 0; j < n_quad; ++j) {
    const double t = 2.0 * kPi * j / n_quad;
    sum += u(center + Point2{radius * std::cos(t), radius * std::sin(t)});
  }
  const double average = sum / n_quad;
  return std::abs(average - u(center) * specfun::bessel_j(Order(0), k * radius));
}

double helmholtz_residual_fd(const std::function<double(Point2)>& u, Point2 p, double k, double h) {
  const double c = u(p);
  const double lap = (u(p + Point2{h, 0}) + u(p - Point2{h, 0}) + u(p + Point2{0, h}) + u(p - Point2{0, h}) - 4.0 * c) /
                     (h * h);
  return lap + k * k * c;
}

}  // namespace positivity::helmholtz
