#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "positivity/specfun.hpp"

using namespace positivity;
using specfun::Order;

namespace {

constexpr double kPi = std::numbers::pi;

// Ascending series sum_k (-1)^k (x/2)^{2k+nu} / (k! Gamma(k+nu+1)) in long double.
long double series_j(double nu, double x) {
  const long double h = 0.5L * x;
  long double term = std::pow(h, static_cast<long double>(nu)) / std::tgamma(static_cast<long double>(nu) + 1.0L);
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -h * h / (static_cast<long double>(k) * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

struct Reference {
  double nu, x, j, y;
};

// mpmath besselj / bessely at 40 digits.
const Reference kReference[] = {
    {0.0, 0.001, 0.999999750000015625, -4.4714166113759232557},
    {0.0, 0.5, 0.93846980724081290423, -0.44451873350670655715},
    {0.0, 1.0, 0.76519768655796655145, 0.088256964215676957983},
    {0.0, 5.0, -0.17759677131433830435, -0.30851762524903378007},
    {0.0, 24.9, 0.083245968353015490053, -0.13649918399676523538},
    {0.0, 25.1, 0.10827567149994945198, -0.1167677076380369472},
    {0.0, 50.0, 0.055812327669251815005, -0.098064995470077079029},
    {0.0, 120.0, 0.071823415829156127576, -0.012104365410016202935},
    {0.0, 400.0, -0.038825181530783955714, -0.0091735198607593585949},
    {1.0, 0.001, 0.00049999993750000261457, -636.62216723113941482},
    {1.0, 0.5, 0.24226845767487388638, -1.4714723926702430692},
    {1.0, 1.0, 0.44005058574493351596, -0.78121282130028871655},
    {1.0, 5.0, -0.32757913759146522204, 0.1478631433912268448},
    {1.0, 24.9, -0.13485569953140886933, -0.086002557595554252479},
    {1.0, 25.1, -0.11463478413442256746, -0.11062223322783098811},
    {1.0, 50.0, -0.097511828125175137661, -0.056795668562014767942},
    {1.0, 120.0, -0.011805211433001891117, -0.071874473209149533555},
    {1.0, 400.0, -0.0092220584285863512542, 0.038813744980751541801},
    {2.0, 0.001, 1.2499998958333366406e-7, -1273239.8630456674272},
    {2.0, 0.5, 0.030604023458682641307, -5.4413708371742657196},
    {2.0, 5.0, 0.046565116277752215532, 0.36766288260552451799},
    {2.0, 24.9, -0.094077751447907769332, 0.12959134804531509422},
    {2.0, 50.0, -0.059712800794258820511, 0.095793168727596488312},
    {2.0, 400.0, 0.038779071238641023958, 0.0093675885856631163039},
    {0.5, 0.001, 0.025231321014980940973, -25.231312604540041424},
    {0.5, 1.0, 0.67139670714180309042, -0.43109886801837607952},
    {0.5, 25.1, -0.0052133943692699521814, -0.15917335852357836089},
    {0.5, 400.0, -0.033946770977217987976, 0.02095629192245765237},
    {3.5, 0.5, 0.00066237856814594236085, -138.86400867242488443},
    {3.5, 5.0, 0.41002850725605811437, -0.027552067999347652374},
    {3.5, 24.9, 0.16067254671463393864, 0.0013520677806418310669},
    {3.5, 120.0, 0.057126250677030170986, 0.045210263108390202265},
    {10.0, 0.001, 2.6911443943049993435e-40, -1.1828049377990414101e+38},
    {10.0, 1.0, 2.630615123687453207e-10, -121618014.27868918929},
    {10.0, 5.0, 0.0014678026473104741311, -25.129110095610096737},
    {10.0, 24.9, -0.088688801558025676465, -0.14154908531382957676},
    {10.0, 25.1, -0.061095034514211717904, -0.15461319280028610511},
    {10.0, 50.0, -0.11384784914946938567, 0.005723897182053513546},
    {10.0, 400.0, 0.037384306121093367871, 0.013944871099990970529},
    {25.5, 1.0, 2.6521175078353223393e-34, -4.7103361631313049596e+31},
    {25.5, 24.9, 0.12427138400713381939, -0.31522689846797537003},
    {25.5, 50.0, -0.12100817898289515847, -0.012466871518385611652},
    {25.5, 400.0, -0.010255261846175825244, 0.038595617924252552371},
    {60.0, 5.0, 8.1600240380935177771e-59, -6.5241072937823727221e+55},
    {60.0, 24.9, 4.5973043051096753625e-18, -1268406915164113.7681},
    {60.0, 50.0, 0.001048519599531418052, -9.1943974189955780252},
    {60.0, 120.0, -0.06725905609891957015, 0.04002304500392340562},
    {60.0, 400.0, -0.001127783542986979642, 0.040105971169323131637},
};

// Relative error with an absolute floor for values near an oscillation zero.
double rel_err(double got, double want, double floor) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("orders are nonnegative half-integers up to 60") {
    CHECK(Order(0).is_integer());
    CHECK_FALSE(Order(0.5).is_integer());
    CHECK(Order::half_odd(3).value() == 3.5);
    CHECK(Order::integer(7).twice() == 14);
    CHECK_THROWS_AS(Order(0.3), std::invalid_argument);
    CHECK_THROWS_AS(Order(-1), std::invalid_argument);
    CHECK_THROWS_AS(Order(60.5), std::invalid_argument);
    CHECK_NOTHROW(Order(60));
  }

  TEST_CASE("J_0(0) = 1 and J_m(0) = 0") {
    CHECK(specfun::bessel_j(Order(0), 0.0) == 1.0);
    CHECK(specfun::bessel_j(Order(3), 0.0) == 0.0);
    CHECK(specfun::bessel_j(Order(0.5), 0.0) == 0.0);
  }

  TEST_CASE("J_{1/2} vanishes at pi") { CHECK(std::abs(specfun::bessel_j(Order(0.5), kPi)) <= 1e-15); }

  TEST_CASE("J_0(1) matches the power series") {
    const double oracle = static_cast<double>(series_j(0.0, 1.0));
    CHECK(oracle == doctest::Approx(0.7651976865579666).epsilon(1e-15));
    CHECK(std::abs(specfun::bessel_j(Order(0), 1.0) - oracle) <= 1e-15);
  }

  TEST_CASE("J agrees with the ascending series for small arguments") {
    for (int twice = 0; twice <= 40; ++twice) {
      for (double x : {1e-3, 0.1, 0.7, 2.0, 5.5, 9.0}) {
        const double nu = 0.5 * twice;
        const double oracle = static_cast<double>(series_j(nu, x));
        CHECK_MESSAGE(rel_err(specfun::bessel_j(Order(nu), x), oracle, 1e-300) <= 1e-12, "nu=" << nu << " x=" << x);
      }
    }
  }

  TEST_CASE("J and Y agree with high-precision references") {
    for (const Reference& r : kReference) {
      CHECK_MESSAGE(rel_err(specfun::bessel_j(Order(r.nu), r.x), r.j, 1e-3) <= 1e-11, "J nu=" << r.nu << " x=" << r.x);
      CHECK_MESSAGE(rel_err(specfun::bessel_y(Order(r.nu), r.x), r.y, 1e-3) <= 1e-11, "Y nu=" << r.nu << " x=" << r.x);
    }
  }

  TEST_CASE("half-odd orders match the spherical closed forms") {
    for (double x : {0.01, 0.3, 2.0, 17.0, 150.0}) {
      const double s = std::sqrt(2.0 / (kPi * x));
      CHECK(rel_err(specfun::bessel_j(Order(0.5), x), s * std::sin(x), 1e-3 * s) <= 1e-13);
      CHECK(rel_err(specfun::bessel_y(Order(0.5), x), -s * std::cos(x), 1e-3 * s) <= 1e-13);
      CHECK(rel_err(specfun::bessel_j(Order(1.5), x), s * (std::sin(x) / x - std::cos(x)), 1e-3 * s) <= 1e-11);
    }
  }

  TEST_CASE("hankel1 of order 1/2 is -i sqrt(2/(pi x)) e^{ix}") {
    using namespace std::complex_literals;
    for (double x : {0.2, 1.0, 9.0, 40.0}) {
      const std::complex<double> expected = -1i * std::sqrt(2.0 / (kPi * x)) * std::exp(1i * x);
      CHECK(std::abs(specfun::hankel1(Order(0.5), x) - expected) <= 1e-14 * std::abs(expected));
    }
  }

  TEST_CASE("hankel1 real part is J and modulus follows the asymptote") {
    const std::complex<double> h = specfun::hankel1(Order(0), 1.0);
    CHECK(h.real() == specfun::bessel_j(Order(0), 1.0));
    CHECK(h.imag() == specfun::bessel_y(Order(0), 1.0));
    const double asymptote = std::sqrt(2.0 / (kPi * 100.0));
    CHECK(std::abs(std::abs(specfun::hankel1(Order(0), 100.0)) - asymptote) <= 0.01 * asymptote);
  }

  TEST_CASE("Y and hankel1 reject nonpositive arguments") {
    CHECK_THROWS_AS(specfun::bessel_y(Order(0), 0.0), std::domain_error);
    CHECK_THROWS_AS(specfun::hankel1(Order(1), -1.0), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_j(Order(0), -0.5), std::domain_error);
    CHECK_THROWS_AS(specfun::bessel_j(Order(0), std::nan("")), std::domain_error);
  }

  TEST_CASE("recurrence J_{n-1} + J_{n+1} = (2n/x) J_n for n <= 10 on [0.1, 100]") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.1, 100.0);
    for (int i = 0; i < 200; ++i) {
      const double x = ux(rng);
      for (int n = 1; n <= 10; ++n) {
        const double lhs = specfun::bessel_j(Order(n - 1), x) + specfun::bessel_j(Order(n + 1), x);
        CHECK(std::abs(lhs - 2.0 * n / x * specfun::bessel_j(Order(n), x)) <= 1e-10);
      }
    }
  }

  TEST_CASE("Wronskian J Y' - J' Y = 2/(pi x)") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(0.05, 200.0);
    std::uniform_int_distribution<int> un(0, 30);
    for (int i = 0; i < 100; ++i) {
      const double x = ux(rng);
      const Order nu = Order(0.5 * un(rng));
      const double w = specfun::bessel_j(nu, x) * specfun::bessel_y_derivative(nu, x) -
                       specfun::bessel_j_derivative(nu, x) * specfun::bessel_y(nu, x);
      CHECK(rel_err(w, 2.0 / (kPi * x), 1e-300) <= 1e-9);
    }
  }

  TEST_CASE("derivatives agree with central differences") {
    for (double nu : {0.0, 1.0, 2.5, 7.0}) {
      for (double x : {0.7, 3.0, 30.0}) {
        const double h = 1e-5;
        const double fd_j = (specfun::bessel_j(Order(nu), x + h) - specfun::bessel_j(Order(nu), x - h)) / (2 * h);
        const double fd_y = (specfun::bessel_y(Order(nu), x + h) - specfun::bessel_y(Order(nu), x - h)) / (2 * h);
        CHECK(std::abs(specfun::bessel_j_derivative(Order(nu), x) - fd_j) <= 1e-8);
        CHECK(std::abs(specfun::bessel_y_derivative(Order(nu), x) - fd_y) <= 1e-8 * std::max(1.0, std::abs(fd_y)));
      }
    }
  }

  TEST_CASE("sequences agree with single-order evaluations") {
    for (double x : {0.01, 1.0, 12.0, 80.0}) {
      const auto j = specfun::bessel_j_sequence(40, x);
      const auto y = specfun::bessel_y_sequence(20, x);
      REQUIRE(j.size() == 41);
      REQUIRE(y.size() == 21);
      for (int n = 0; n <= 40; ++n) CHECK(rel_err(j[n], specfun::bessel_j(Order(n), x), 1e-300) <= 1e-12);
      for (int n = 0; n <= 20; ++n) CHECK(rel_err(y[n], specfun::bessel_y(Order(n), x), 1e-300) <= 1e-12);
    }
    CHECK_THROWS_AS(specfun::bessel_j_sequence(-1, 1.0), std::invalid_argument);
  }

  TEST_CASE("zeros of J_0") {
    CHECK(std::abs(specfun::bessel_zero(Order(0), 1) - 2.404825557695773) <= 1e-14);
    CHECK(std::abs(specfun::bessel_zero(Order(0), 2) - 5.520078110286311) <= 1e-13);
    double prev = 0.0;
    for (int m = 1; m <= 20; ++m) {
      const double z = specfun::bessel_zero(Order(0), m);
      CHECK(z > prev);
      CHECK(std::abs(specfun::bessel_j(Order(0), z)) <= 1e-10);
      prev = z;
    }
  }

  TEST_CASE("zeros agree with high-precision references") {
    // mpmath besseljzero, m = 1, 2, 3, 10, 20.
    const int ms[] = {1, 2, 3, 10, 20};
    const std::pair<double, std::array<double, 5>> table[] = {
        {1.0, {3.8317059702075123156, 7.0155866698156187535, 10.173468135062722077, 32.189679910974403627,
               63.611356698481232631}},
        {2.5, {5.7634591968945497914, 9.0950113304763551563, 12.322940970566582052, 34.470488331284988666,
               65.927941502958645068}},
        {7.0, {11.086370019245083846, 14.821268727013171251, 18.287582832481726446, 41.030773691585536792,
               72.706551172477145322}},
    };
    for (const auto& [nu, zeros] : table) {
      for (int i = 0; i < 5; ++i) CHECK(rel_err(specfun::bessel_zero(Order(nu), ms[i]), zeros[i], 1.0) <= 1e-13);
    }
  }

  TEST_CASE("zeros of J_{1/2} are m pi") {
    for (int m = 1; m <= 30; ++m) CHECK(std::abs(specfun::bessel_zero(Order(0.5), m) - m * kPi) <= 1e-12);
  }

  TEST_CASE("zeros of J_0 and J_1 interlace") {
    for (int m = 1; m <= 10; ++m) {
      CHECK(specfun::bessel_zero(Order(0), m) < specfun::bessel_zero(Order(1), m));
      CHECK(specfun::bessel_zero(Order(1), m) < specfun::bessel_zero(Order(0), m + 1));
    }
    CHECK_THROWS_AS(specfun::bessel_zero(Order(0), 0), std::invalid_argument);
  }

  TEST_CASE("fundamental solution") {
    using namespace std::complex_literals;
    const std::complex<double> a = specfun::fundamental_solution(1.0, {1.0, 0.0});
    const std::complex<double> b = specfun::fundamental_solution(1.0, {0.6, -0.8});
    CHECK(std::abs(a - b) <= 1e-15);
    const std::complex<double> expected =
        0.25i * (specfun::bessel_j(Order(0), 1.0) + 1i * specfun::bessel_y(Order(0), 1.0));
    CHECK(std::abs(a - expected) <= 1e-15);
    CHECK_THROWS_AS(specfun::fundamental_solution(1.0, {0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(specfun::fundamental_solution(0.0, {1.0, 0.0}), std::domain_error);
  }

  TEST_CASE("fundamental solution satisfies the Helmholtz equation away from 0") {
    const double h = 1e-4;
    for (double k : {1.0, 3.0}) {
      for (Point2 p : {Point2{0.5, 0.0}, Point2{0.3, -0.6}, Point2{2.0, 1.5}}) {
        const auto phi = [&](Point2 q) { return specfun::fundamental_solution(k, q); };
        const std::complex<double> lap =
            (phi(p + Point2{h, 0}) + phi(p - Point2{h, 0}) + phi(p + Point2{0, h}) + phi(p - Point2{0, h}) - 4.0 * phi(p)) /
            (h * h);
        CHECK(std::abs(lap + k * k * phi(p)) <= 1e-4);
      }
    }
  }
}
