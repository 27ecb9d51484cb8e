#include "positivity/herglotz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "positivity/errors.hpp"
#include "positivity/helmholtz.hpp"
#include "positivity/specfun.hpp"

namespace positivity::herglotz {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

cplx i_pow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("wavenumber k must be positive and finite");
}

// Row of the real Fourier-Bessel basis at p: [J_0, cos t J_1, sin t J_1, ...].
void basis_row(double k, int order, Point2 origin, Point2 p, double* row) {
  const Point2 d = p - origin;
  const double r = norm(d);
  const double t = std::atan2(d.y, d.x);
  const std::vector<double> j = specfun::bessel_j_sequence(order, k * r);
  row[0] = j[0];
  for (int m = 1; m <= order; ++m) {
    row[2 * m - 1] = std::cos(m * t) * j[m];
    row[2 * m] = std::sin(m * t) * j[m];
  }
}

linalg::Matrix basis_matrix(double k, int order, Point2 origin, std::span<const Point2> pts) {
  linalg::Matrix a(static_cast<Eigen::Index>(pts.size()), 2 * order + 1);
  std::vector<double> row(static_cast<std::size_t>(2 * order + 1));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    basis_row(k, order, origin, pts[i], row.data());
    for (int c = 0; c <= 2 * order; ++c) a(static_cast<Eigen::Index>(i), c) = row[static_cast<std::size_t>(c)];
  }
  return a;
}

FourierBesselWave wave_from(double k, int order, Point2 origin, const linalg::Vector& x) {
  FourierBesselWave w = FourierBesselWave::zero(k, order, origin);
  w.a0 = x(0);
  for (int m = 1; m <= order; ++m) {
    w.ac[static_cast<std::size_t>(m - 1)] = x(2 * m - 1);
    w.as[static_cast<std::size_t>(m - 1)] = x(2 * m);
  }
  return w;
}

std::string failure_message(const char* what, double residual, double limit) {
  std::ostringstream os;
  os.precision(6);
  os << what << ": residual_max " << residual << " exceeds " << limit;
  return os.str();
}

}  // namespace

cplx HerglotzDensity::operator()(double theta) const {
  cplx s = 0.0;
  for (int m = -order; m <= order; ++m) s += coefficient(m) * std::exp(kI * (m * theta));
  return s;
}

double HerglotzDensity::coefficient_norm() const {
  double s = 0.0;
  for (const cplx& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

double HerglotzDensity::l1_bound() const { return 2.0 * kPi * coefficient_norm(); }

FourierBesselWave FourierBesselWave::zero(double k, int order, Point2 origin) {
  if (order < 0) throw InputError("wave order must be nonnegative");
  FourierBesselWave w;
  w.k = k;
  w.order = order;
  w.origin = origin;
  w.ac.assign(static_cast<std::size_t>(order), 0.0);
  w.as.assign(static_cast<std::size_t>(order), 0.0);
  return w;
}

double FourierBesselWave::coefficient_norm() const {
  double s = a0 * a0;
  for (std::size_t i = 0; i < ac.size(); ++i) s += ac[i] * ac[i] + as[i] * as[i];
  return std::sqrt(s);
}

int minimum_quadrature_nodes(const HerglotzDensity& density, std::span<const Point2> points) {
  double rmax = 0.0;
  for (const Point2& p : points) rmax = std::max(rmax, distance(p, density.origin));
  return std::max(64, static_cast<int>(std::ceil(8.0 * (density.k * rmax + density.order))));
}

std::vector<cplx> eval_quadrature(const HerglotzDensity& density, std::span<const Point2> points, int n_quad) {
  require_k(density.k);
  if (n_quad < minimum_quadrature_nodes(density, points)) {
    throw InputError("eval_quadrature: n_quad below max(64, 8 (k max|x| + M))");
  }
  std::vector<Point2> dirs(static_cast<std::size_t>(n_quad));
  std::vector<cplx> weighted(static_cast<std::size_t>(n_quad));
  for (int j = 0; j < n_quad; ++j) {
    const double phi = 2.0 * kPi * j / n_quad;
    dirs[j] = {std::cos(phi), std::sin(phi)};
    weighted[j] = density(phi) * (2.0 * kPi / n_quad);
  }
  std::vector<cplx> out;
  out.reserve(points.size());
  for (const Point2& p : points) {
    const Point2 d = p - density.origin;
    cplx s = 0.0;
    for (int j = 0; j < n_quad; ++j) s += std::exp(kI * (density.k * dot(d, dirs[j]))) * weighted[j];
    out.push_back(s);
  }
  return out;
}

double eval_series(const FourierBesselWave& wave, Point2 p) {
  const Point2 d = p - wave.origin;
  const double t = std::atan2(d.y, d.x);
  const std::vector<double> j = specfun::bessel_j_sequence(wave.order, wave.k * norm(d));
  double u = wave.a0 * j[0];
  for (int m = 1; m <= wave.order; ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    u += (wave.ac[i] * std::cos(m * t) + wave.as[i] * std::sin(m * t)) * j[m];
  }
  return u;
}

std::vector<double> eval_series(const FourierBesselWave& wave, std::span<const Point2> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const Point2& p : points) out.push_back(eval_series(wave, p));
  return out;
}

Point2 gradient(const FourierBesselWave& wave, Point2 p) {
  const Point2 d = p - wave.origin;
  const double t = std::atan2(d.y, d.x);
  const double k = wave.k;
  const std::vector<double> j = specfun::bessel_j_sequence(wave.order + 1, k * norm(d));
  // d_r and (1/r) d_t of each term; m J_m(kr) / r = k (J_{m-1} + J_{m+1}) / 2.
  double dr = -wave.a0 * k * j[1];
  double dt = 0.0;
  for (int m = 1; m <= wave.order; ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    const double c = std::cos(m * t);
    const double s = std::sin(m * t);
    dr += k * 0.5 * (j[m - 1] - j[m + 1]) * (wave.ac[i] * c + wave.as[i] * s);
    dt += k * 0.5 * (j[m - 1] + j[m + 1]) * (-wave.ac[i] * s + wave.as[i] * c);
  }
  const double ct = std::cos(t);
  const double st = std::sin(t);
  return {ct * dr - st * dt, st * dr + ct * dt};
}

HerglotzDensity to_density(const FourierBesselWave& wave) {
  HerglotzDensity f;
  f.k = wave.k;
  f.order = wave.order;
  f.origin = wave.origin;
  f.coeffs.assign(static_cast<std::size_t>(2 * wave.order + 1), 0.0);
  f.coeffs[static_cast<std::size_t>(wave.order)] = wave.a0 / (2.0 * kPi);
  for (int m = 1; m <= wave.order; ++m) {
    const auto i = static_cast<std::size_t>(m - 1);
    const cplx scale = 1.0 / (4.0 * kPi * i_pow(m));
    f.coeffs[static_cast<std::size_t>(wave.order + m)] = cplx(wave.ac[i], -wave.as[i]) * scale;
    f.coeffs[static_cast<std::size_t>(wave.order - m)] = cplx(wave.ac[i], wave.as[i]) * scale;
  }
  return f;
}

double lipschitz_bound(const FourierBesselWave& wave) { return wave.k * to_density(wave).l1_bound(); }

FitFailed::FitFailed(const std::string& what, Fit fit) : std::runtime_error(what), fit_(std::move(fit)) {}

int default_order(const geometry::Domain2D& domain, double k) {
  require_k(k);
  const double r = geometry::circumradius(domain, geometry::centroid(domain));
  return static_cast<int>(std::ceil(k * r)) + 10;
}

Fit fit_boundary(const geometry::Domain2D& domain, const BoundaryFitOptions& opt) {
  require_k(opt.k);
  if (!std::isfinite(opt.target)) throw InputError("fit_boundary: target must be finite");
  const helmholtz::SpectralGate gate = helmholtz::faber_krahn_gate(domain, opt.k);
  if (!gate.passes && !opt.override_gate) throw helmholtz::GateFailure(gate);

  const int order = opt.order.value_or(default_order(domain, opt.k));
  if (order < 0) throw InputError("fit_boundary: order must be nonnegative");
  const int min_col = 4 * (2 * order + 1);
  const int n_col = opt.n_col.value_or(std::max(64, min_col));
  if (n_col < min_col) throw InputError("fit_boundary: need n_col >= 4 (2M + 1)");

  const Point2 origin = geometry::centroid(domain);
  const std::vector<Point2> col = geometry::sample_boundary(domain, n_col).points;
  const linalg::Matrix a = basis_matrix(opt.k, order, origin, col);
  const linalg::Vector b = linalg::Vector::Constant(a.rows(), opt.target);
  const linalg::LeastSquaresSolution sol = linalg::lstsq(a, b, opt.mode);

  Fit fit{wave_from(opt.k, order, origin, sol.coefficients), {}};
  const std::vector<Point2> val = geometry::validation_points(domain, 4 * n_col);
  const double per = geometry::perimeter(domain);
  double sq = 0.0;
  for (const Point2& p : val) {
    const double e = std::abs(eval_series(fit.wave, p) - opt.target);
    fit.report.residual_max = std::max(fit.report.residual_max, e);
    sq += e * e;
  }
  fit.report.residual_l2 = std::sqrt(sq * per / static_cast<double>(val.size()));
  fit.report.collocation_residual_l2 = sol.residual_norm * std::sqrt(per / n_col);
  fit.report.order_used = order;
  fit.report.regularization = linalg::describe_mode(opt.mode);
  fit.report.coefficient_norm = fit.wave.coefficient_norm();
  fit.report.effective_rank = sol.effective_rank;
  fit.report.n_fit = n_col;
  fit.report.n_validation = static_cast<int>(val.size());

  const double limit = opt.failure_fraction * std::abs(opt.target);
  if (fit.report.residual_max > limit) {
    throw FitFailed(failure_message("fit failed (ill-resolved, or near a Dirichlet eigenvalue)",
                                    fit.report.residual_max, limit),
                    std::move(fit));
  }
  return fit;
}

Fit fit_interior(std::span<const InteriorTarget> targets, const InteriorFitOptions& opt) {
  require_k(opt.k);
  if (targets.empty()) throw InputError("fit_interior: no targets");
  Point2 origin{};
  if (opt.origin) {
    origin = *opt.origin;
  } else {
    for (const InteriorTarget& t : targets) origin = origin + t.point;
    origin = origin * (1.0 / static_cast<double>(targets.size()));
  }
  double rmax = 0.0;
  double vmax = 0.0;
  for (const InteriorTarget& t : targets) {
    if (!is_finite(t.point) || !std::isfinite(t.value)) throw InputError("fit_interior: non-finite target");
    rmax = std::max(rmax, distance(t.point, origin));
    vmax = std::max(vmax, std::abs(t.value));
  }
  const int order = opt.order.value_or(static_cast<int>(std::ceil(opt.k * rmax)) + 10);
  if (order < 0) throw InputError("fit_interior: order must be nonnegative");

  std::vector<Point2> fit_pts;
  std::vector<double> fit_vals;
  std::vector<const InteriorTarget*> held;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (i % 10 == 0) {
      held.push_back(&targets[i]);
    } else {
      fit_pts.push_back(targets[i].point);
      fit_vals.push_back(targets[i].value);
    }
  }
  if (static_cast<int>(fit_pts.size()) < 2 * order + 1) {
    throw InputError("fit_interior: " + std::to_string(fit_pts.size()) + " fit targets for " +
                     std::to_string(2 * order + 1) + " unknowns");
  }
  const linalg::Matrix a = basis_matrix(opt.k, order, origin, fit_pts);
  const linalg::Vector b = Eigen::Map<const linalg::Vector>(fit_vals.data(), static_cast<Eigen::Index>(fit_vals.size()));
  const linalg::LeastSquaresSolution sol = linalg::lstsq(a, b, opt.mode);

  Fit fit{wave_from(opt.k, order, origin, sol.coefficients), {}};
  double sq = 0.0;
  for (const InteriorTarget* t : held) {
    const double e = std::abs(eval_series(fit.wave, t->point) - t->value);
    fit.report.residual_max = std::max(fit.report.residual_max, e);
    sq += e * e;
  }
  fit.report.residual_l2 = std::sqrt(sq / static_cast<double>(held.size()));
  fit.report.collocation_residual_l2 = sol.residual_norm / std::sqrt(static_cast<double>(fit_pts.size()));
  fit.report.order_used = order;
  fit.report.regularization = linalg::describe_mode(opt.mode);
  fit.report.coefficient_norm = fit.wave.coefficient_norm();
  fit.report.effective_rank = sol.effective_rank;
  fit.report.n_fit = static_cast<int>(fit_pts.size());
  fit.report.n_validation = static_cast<int>(held.size());

  const double limit = opt.failure_fraction * vmax;
  if (fit.report.residual_max > limit) {
    throw FitFailed(failure_message("interior fit failed", fit.report.residual_max, limit), std::move(fit));
  }
  return fit;
}

cplx far_field_constant(double k) { return std::sqrt(2.0 * kPi / k) * std::exp(cplx(0.0, -0.25 * kPi)); }

FarFieldReport far_field(const HerglotzDensity& density, Point2 direction, std::span<const double> radii) {
  require_k(density.k);
  const double k = density.k;
  const double len = norm(direction);
  if (!(len > 0.0)) throw InputError("far_field: direction must be nonzero");
  const Point2 xhat = direction * (1.0 / len);
  const double theta = std::atan2(xhat.y, xhat.x);
  const cplx f_plus = density(theta);
  const cplx f_minus = density(theta + kPi);
  const cplx c = far_field_constant(k);

  FarFieldReport rep;
  rep.direction = xhat;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const double r : radii) {
    if (!(r >= 10.0 / k)) throw InputError("far_field: radii must be at least 10/k");
    const int n = std::max(64, static_cast<int>(std::ceil(8.0 * (k * r + density.order)))) + 64;
    cplx u = 0.0;
    cplx du = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = 2.0 * kPi * j / n;
      const double cosang = std::cos(phi - theta);
      const cplx term = std::exp(kI * (k * r * cosang)) * density(phi) * (2.0 * kPi / n);
      u += term;
      du += term * kI * (k * cosang);
    }
    const cplx out = std::exp(kI * (k * r));
    const cplx in = std::exp(-kI * (k * r));
    const cplx lead = c / std::sqrt(r) * (out * f_plus + kI * in * f_minus);
    const cplx dlead = c / std::sqrt(r) * kI * k * (out * f_plus - kI * in * f_minus);
    FarFieldSample s;
    s.radius = r;
    s.value_deviation = std::abs(u - lead);
    s.combined_deviation = std::sqrt(std::norm(u - lead) + std::norm(du - dlead) / (k * k));
    s.relative_error = s.value_deviation / (std::abs(c) / std::sqrt(r) * (std::abs(f_plus) + std::abs(f_minus)));
    rep.samples.push_back(s);
    const double lx = std::log(r);
    const double ly = std::log(s.combined_deviation);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(radii.size());
  if (radii.size() >= 2) rep.decay_exponent = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
  return rep;
}

FarFieldReport far_field(const FourierBesselWave& wave, Point2 direction, std::span<const double> radii) {
  return far_field(to_density(wave), direction, radii);
}

}  // namespace positivity::herglotz
