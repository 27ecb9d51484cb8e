#include "positivity/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "positivity/errors.hpp"
#include "positivity/specfun.hpp"

namespace positivity::verify {

namespace {

constexpr double kPi = std::numbers::pi;

PositivityCertificate certify_points(const FourierBesselWave& wave, std::span<const Point2> pts, double max_gap,
                                     double radius) {
  if (pts.empty()) throw InputError("certificate: no sample points");
  PositivityCertificate c;
  c.n_samples = static_cast<int>(pts.size());
  c.min_sample = eval_series(wave, pts[0]);
  c.argmin = pts[0];
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double v = eval_series(wave, pts[i]);
    if (v < c.min_sample) {
      c.min_sample = v;
      c.argmin = pts[i];
    }
  }
  c.lipschitz_bound = herglotz::lipschitz_bound(wave);
  c.max_gap = max_gap;
  c.coverage_radius = radius;
  c.certified_margin = c.min_sample - c.lipschitz_bound * radius;
  c.certified = c.certified_margin > 0.0;
  return c;
}

}  // namespace

PositivityCertificate certify_positive(const FourierBesselWave& wave, const geometry::BoundarySampling& sampling) {
  return certify_points(wave, sampling.points, sampling.max_gap, 0.5 * sampling.max_gap);
}

PositivityCertificate certify_positive_on_set(const FourierBesselWave& wave, const geometry::TargetSet& set,
                                              double lipschitz_radius) {
  if (set.points.empty()) throw InputError("certify_positive_on_set: empty target set");
  if (!(lipschitz_radius >= 0.0)) throw InputError("certify_positive_on_set: radius must be nonnegative");
  double gap = 0.0;
  for (std::size_t i = 0; i + 1 < set.points.size(); ++i) gap = std::max(gap, distance(set.points[i], set.points[i + 1]));
  return certify_points(wave, set.points, gap, lipschitz_radius);
}

double max_difference_quotient(const FourierBesselWave& wave, const geometry::BoundarySampling& sampling) {
  const std::vector<double> v = eval_series(wave, sampling.points);
  double q = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t j = (i + 1) % v.size();
    const double d = distance(sampling.points[i], sampling.points[j]);
    if (d > 0.0) q = std::max(q, std::abs(v[j] - v[i]) / d);
  }
  return q;
}

double sampled_gradient_max(const FourierBesselWave& wave, std::span<const Point2> points) {
  double g = 0.0;
  for (const Point2& p : points) g = std::max(g, norm(herglotz::gradient(wave, p)));
  return g;
}

SignChangeReport sign_change_on_circle(const FourierBesselWave& wave, int m, int n_samples) {
  if (m < 1) throw InputError("sign_change_on_circle: m must be >= 1");
  if (n_samples < 8) throw InputError("sign_change_on_circle: need at least 8 samples");
  const double scale = wave.coefficient_norm();
  if (!(scale > 1e-14)) throw InputError("sign_change_on_circle: wave is zero");

  SignChangeReport r;
  r.m = m;
  const double kr = specfun::bessel_zero(specfun::Order(0), m);
  r.circle_radius = kr / wave.k;
  r.min_on_circle = std::numeric_limits<double>::infinity();
  r.max_on_circle = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  double max_abs = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double t = 2.0 * kPi * j / n_samples;
    const double u = eval_series(wave, wave.origin + Point2{r.circle_radius * std::cos(t), r.circle_radius * std::sin(t)});
    r.min_on_circle = std::min(r.min_on_circle, u);
    r.max_on_circle = std::max(r.max_on_circle, u);
    max_abs = std::max(max_abs, std::abs(u));
    sum += u;
  }
  // d_r J_0(k|x|) = -k J_1(kr) is constant on the circle.
  const double dv = -wave.k * specfun::bessel_j(specfun::Order(1), kr);
  r.flux_integral = dv * r.circle_radius * (2.0 * kPi / n_samples) * sum;
  r.vanishes_on_circle = max_abs <= 1e-10 * scale;
  // A wave that vanishes on the circle is the degenerate case, not a sign change.
  r.changes_sign = !r.vanishes_on_circle && r.min_on_circle * r.max_on_circle < 0.0;
  return r;
}

ZeroScan scan_for_zero(const FourierBesselWave& wave, Point2 center, double radius, double grid_step) {
  if (!(radius > 0.0) || !(grid_step > 0.0)) throw InputError("scan_for_zero: radius and step must be positive");
  ZeroScan s;
  const int n = static_cast<int>(std::floor(radius / grid_step));
  bool have_pos = false;
  bool have_neg = false;
  double max_abs = 0.0;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      const Point2 off{i * grid_step, j * grid_step};
      if (norm(off) > radius) continue;
      const Point2 p = center + off;
      const double u = eval_series(wave, p);
      ++s.points_scanned;
      max_abs = std::max(max_abs, std::abs(u));
      if (u > 0.0 && !have_pos) {
        have_pos = true;
        s.positive_point = p;
      } else if (u < 0.0 && !have_neg) {
        have_neg = true;
        s.negative_point = p;
      }
      if (have_pos && have_neg) {
        s.found = true;
        return s;
      }
    }
  }
  s.identically_small = max_abs <= 1e-12 * std::max(1.0, wave.coefficient_norm());
  return s;
}

FourierBesselWave random_wave(double k, int order, std::mt19937_64& rng, Point2 origin) {
  std::normal_distribution<double> normal(0.0, 1.0);
  FourierBesselWave w = FourierBesselWave::zero(k, order, origin);
  w.a0 = normal(rng);
  for (int m = 0; m < order; ++m) {
    w.ac[static_cast<std::size_t>(m)] = normal(rng);
    w.as[static_cast<std::size_t>(m)] = normal(rng);
  }
  return w;
}

}  // namespace positivity::verify
