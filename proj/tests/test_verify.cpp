#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "positivity/errors.hpp"
#include "positivity/herglotz.hpp"
#include "positivity/specfun.hpp"
#include "positivity/verify.hpp"

using namespace positivity;
using namespace positivity::verify;
using geometry::Domain2D;
using herglotz::FourierBesselWave;
using specfun::Order;

namespace {

constexpr double kPi = std::numbers::pi;

double bessel(int m, double x) { return specfun::bessel_j(Order(m), x); }
double j0_zero(int m) { return specfun::bessel_zero(Order(0), m); }

FourierBesselWave radial(double k, double a0) {
  FourierBesselWave w = FourierBesselWave::zero(k, 0);
  w.a0 = a0;
  return w;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("certificate for the disk fit") {
    const FourierBesselWave w = radial(1.0, 1.0 / bessel(0, 1.0));
    const auto s = geometry::sample_boundary(Domain2D::disk({0, 0}, 1.0), 512);
    const PositivityCertificate c = certify_positive(w, s);
    CHECK(c.n_samples == 512);
    CHECK(std::abs(c.min_sample - 1.0) <= 1e-10);
    CHECK(c.lipschitz_bound == doctest::Approx(1.0 / bessel(0, 1.0)));
    CHECK(c.coverage_radius == doctest::Approx(c.max_gap / 2));
    const double gap_term = c.lipschitz_bound * c.max_gap / 2;
    CHECK(gap_term == doctest::Approx(0.008).epsilon(0.01));
    CHECK(c.certified_margin == doctest::Approx(c.min_sample - gap_term));
    CHECK(c.certified);
  }

  TEST_CASE("zero wave is never certified") {
    const auto s = geometry::sample_boundary(Domain2D::disk({0, 0}, 1.0), 64);
    const PositivityCertificate c = certify_positive(FourierBesselWave::zero(1.0, 5), s);
    CHECK(c.min_sample == 0.0);
    CHECK(c.lipschitz_bound == 0.0);
    CHECK_FALSE(c.certified);
  }

  TEST_CASE("certificate for the unit square fit") {
    herglotz::BoundaryFitOptions opt;
    opt.order = 20;
    opt.mode = linalg::Tikhonov{1e-5};
    const auto fit = herglotz::fit_boundary(Domain2D::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), opt);
    const auto s = geometry::sample_boundary(Domain2D::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 4096);
    const PositivityCertificate c = certify_positive(fit.wave, s);
    CHECK(c.certified_margin >= 0.5);
    CHECK(c.certified);
  }

  TEST_CASE("certified waves stay positive under refinement") {
    const Domain2D d = Domain2D::polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}});
    herglotz::BoundaryFitOptions opt;
    opt.mode = linalg::Tikhonov{1e-2};
    const auto fit = herglotz::fit_boundary(d, opt);
    const PositivityCertificate c = certify_positive(fit.wave, geometry::sample_boundary(d, 1024));
    REQUIRE(c.certified);
    const PositivityCertificate fine = certify_positive(fit.wave, geometry::sample_boundary(d, 4096));
    CHECK(fine.min_sample > 0.0);
    CHECK(fine.min_sample >= c.certified_margin);
  }

  TEST_CASE("difference quotients respect the lipschitz bound") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
      const FourierBesselWave w = random_wave(0.5 + 0.2 * trial, trial % 12, rng);
      const Domain2D d = trial % 2 == 0 ? Domain2D::disk({0.3, -0.1}, 2.0)
                                        : Domain2D::polygon({{-1, -1}, {2, -1}, {2, 1}, {-1, 1}});
      const auto s = geometry::sample_boundary(d, 700);
      CHECK(max_difference_quotient(w, s) <= herglotz::lipschitz_bound(w) * (1 + 1e-6));
      CHECK(sampled_gradient_max(w, s.points) <= herglotz::lipschitz_bound(w) * (1 + 1e-6));
    }
  }

  TEST_CASE("set certificates") {
    const FourierBesselWave w = radial(1.0, 1.0);
    geometry::TargetSet finite{{{0.1, 0.2}, {0.5, -0.3}, {1.0, 1.0}}};
    const PositivityCertificate c = certify_positive_on_set(w, finite);
    CHECK(c.certified);
    CHECK(c.min_sample == doctest::Approx(bessel(0, std::sqrt(2.0))).epsilon(1e-14));
    CHECK(c.certified_margin == c.min_sample);
    CHECK(c.argmin == Point2{1.0, 1.0});
    // Points on the first zero circle of J_0.
    geometry::TargetSet circle;
    for (int i = 0; i < 16; ++i) circle.points.push_back(j0_zero(1) * Point2{std::cos(i * kPi / 8), std::sin(i * kPi / 8)});
    const PositivityCertificate z = certify_positive_on_set(w, circle);
    CHECK(std::abs(z.min_sample) <= 1e-14);
    CHECK_FALSE(z.certified);
    // A sampled curve pays the Lipschitz term.
    const PositivityCertificate curve = certify_positive_on_set(w, finite, 0.1);
    CHECK(curve.certified_margin == doctest::Approx(c.min_sample - 0.1 * herglotz::lipschitz_bound(w)));
  }

  TEST_CASE("random waves change sign on the Bessel zero circles") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 30; ++trial) {
      const FourierBesselWave w = random_wave(1.0, 10, rng, {0.2 * trial, -0.1 * trial});
      for (int m = 1; m <= 5; ++m) {
        const SignChangeReport r = sign_change_on_circle(w, m, 1024);
        CHECK(r.circle_radius == doctest::Approx(j0_zero(m)));
        CHECK(std::abs(r.flux_integral) <= 1e-8 * w.coefficient_norm());
        CHECK(r.changes_sign == (!r.vanishes_on_circle && r.min_on_circle * r.max_on_circle < 0));
        if (m == 1) CHECK(r.changes_sign);
      }
    }
  }

  TEST_CASE("radial wave vanishes on the zero circle") {
    const SignChangeReport r = sign_change_on_circle(radial(1.0, 1.0), 1, 1024);
    CHECK_FALSE(r.changes_sign);
    CHECK(r.vanishes_on_circle);
    CHECK(std::abs(r.min_on_circle) <= 1e-10);
    CHECK(std::abs(r.max_on_circle) <= 1e-10);
    CHECK_THROWS_AS(sign_change_on_circle(FourierBesselWave::zero(1.0, 3), 1, 1024), InputError);
  }

  TEST_CASE("first-order wave on the zero circle") {
    FourierBesselWave w = FourierBesselWave::zero(1.0, 1);
    w.ac[0] = 1.0;
    const SignChangeReport r = sign_change_on_circle(w, 1, 1024);
    CHECK(r.changes_sign);
    CHECK(r.max_on_circle == doctest::Approx(bessel(1, j0_zero(1))).epsilon(1e-12));
    CHECK(r.min_on_circle == doctest::Approx(-r.max_on_circle).epsilon(1e-12));
    CHECK(std::abs(r.flux_integral) <= 1e-12);
  }

  TEST_CASE("zero scan examples") {
    const FourierBesselWave w = radial(1.0, 1.0);
    const ZeroScan s = scan_for_zero(w, {0, 0}, 1.001 * j0_zero(1), 0.05);
    CHECK(s.found);
    CHECK(herglotz::eval_series(w, s.positive_point) > 0);
    CHECK(herglotz::eval_series(w, s.negative_point) < 0);
    CHECK(norm(s.negative_point) <= 1.001 * j0_zero(1));
    // Strictly inside the first zero, J_0 is positive.
    CHECK_FALSE(scan_for_zero(w, {0, 0}, 0.9 * j0_zero(1), 0.05).found);
    const ZeroScan z = scan_for_zero(FourierBesselWave::zero(1.0, 2), {0, 0}, 3.0, 0.05);
    CHECK_FALSE(z.found);
    CHECK(z.identically_small);
    CHECK(z.points_scanned > 0);
  }

  TEST_CASE("zero in every ball of radius j01 / k") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
      const FourierBesselWave w = random_wave(1.0, 10, rng);
      for (int i = 0; i < 5; ++i) {
        const ZeroScan s = scan_for_zero(w, {c(rng), c(rng)}, j0_zero(1), 0.05);
        CHECK(s.found);
      }
    }
  }

  TEST_CASE("zero balls scale with k") {
    std::mt19937_64 rng(24);
    for (double k : {0.5, 2.0, 4.0}) {
      const FourierBesselWave w = random_wave(k, 10, rng);
      CHECK(scan_for_zero(w, {0.7, -0.4}, j0_zero(1) / k, 0.05 / k).found);
    }
  }

  TEST_CASE("random waves are reproducible") {
    std::mt19937_64 a(99);
    std::mt19937_64 b(99);
    const FourierBesselWave wa = random_wave(1.0, 6, a);
    const FourierBesselWave wb = random_wave(1.0, 6, b);
    CHECK(wa.a0 == wb.a0);
    CHECK(wa.ac == wb.ac);
    CHECK(wa.as == wb.as);
    CHECK(wa.ac.size() == 6);
  }
}
