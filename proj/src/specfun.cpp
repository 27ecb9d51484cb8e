#include "positivity/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace positivity::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kRescaleAbove = 1e250;
constexpr double kRescaleBy = 1e-250;

void require_finite_nonnegative(double x, const char* what) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error(std::string(what) + ": argument must be finite and >= 0");
  }
}

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw std::domain_error(std::string(what) + ": argument must be finite and > 0");
  }
}

// Starting index for backward recurrence; far enough past max(n, x) that the
// truncation error of the normalised sequence is below double precision.
int backward_start(int nmax, double x) {
  const double big = std::max(static_cast<double>(nmax), x);
  const int start = static_cast<int>(big + std::sqrt(160.0 * std::max(big, 1.0))) + 12;
  return start + (start % 2);
}

// Hankel asymptotic expansion for nu in {0, 1}: returns {J_nu, Y_nu}.
std::pair<double, double> hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev_abs = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double a = std::abs(term);
    if (a > prev_abs) break;  // asymptotic series started diverging
    prev_abs = a;
    // k odd feeds Q with signs +,-,+...; k even feeds P with signs -,+,...
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      case 0: p += term; break;
    }
    if (a < 1e-18 * std::max(std::abs(p), std::abs(q) + 1e-300)) break;
  }
  const double chi = x - (0.5 * nu + 0.25) * kPi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double c = std::cos(chi);
  const double s = std::sin(chi);
  return {amp * (p * c - q * s), amp * (p * s + q * c)};
}

// Y_0 and Y_1 from the Neumann series in the Miller sequence J_0..J_n.
std::pair<double, double> neumann_y01(double x) {
  const int n = backward_start(0, x);
  const std::vector<double> j = bessel_j_sequence(n, x);
  const double log_term = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  double sign = -1.0;
  for (int k = 1; 2 * k + 1 <= n; ++k) {
    s0 += sign * j[2 * k] / k;
    s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k;
    sign = -sign;
  }
  const double y0 = (2.0 / kPi) * (log_term * j[0] - 2.0 * s0);
  const double y1 = (2.0 / kPi) * (log_term * j[1] - j[0] / x + s1);
  return {y0, y1};
}

std::pair<double, double> integer_y01(double x) {
  if (x > kAsymptoticCrossover) {
    return {hankel_asymptotic(0, x).second, hankel_asymptotic(1, x).second};
  }
  return neumann_y01(x);
}

// Spherical Bessel j_0..j_n by backward recurrence normalised against the
// closed forms of j_0 or j_1, whichever is larger in magnitude.
std::vector<double> spherical_j_sequence(int nmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double j0 = std::sin(x) / x;
  const double j1 = x < 1e-2 ? x / 3.0 - x * x * x / 30.0 + std::pow(x, 5) / 840.0
                             : std::sin(x) / (x * x) - std::cos(x) / x;
  const int start = backward_start(std::max(nmax, 1), x);
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[start] = 1.0;
  for (int n = start; n >= 1; --n) {
    f[n - 1] = (2.0 * n + 1.0) / x * f[n] - f[n + 1];
    if (std::abs(f[n - 1]) > kRescaleAbove) {
      for (int i = n - 1; i <= start; ++i) f[i] *= kRescaleBy;
    }
  }
  const double scale = std::abs(j0) >= std::abs(j1) ? j0 / f[0] : j1 / f[1];
  for (int n = 0; n <= nmax; ++n) out[n] = f[n] * scale;
  return out;
}

std::vector<double> spherical_y_sequence(int nmax, double x) {
  std::vector<double> y(static_cast<std::size_t>(std::max(nmax, 1)) + 1);
  y[0] = -std::cos(x) / x;
  y[1] = -std::cos(x) / (x * x) - std::sin(x) / x;
  for (int n = 1; n < nmax; ++n) y[n + 1] = (2.0 * n + 1.0) / x * y[n] - y[n - 1];
  y.resize(static_cast<std::size_t>(nmax) + 1);
  return y;
}

// J and Y for raw twice-order (may exceed kMaxTwiceOrder by one step, as the
// derivative formulas need nu + 1).
double j_raw(int twice, double x) {
  if (twice % 2 == 0) return bessel_j_sequence(twice / 2, x)[twice / 2];
  if (x == 0.0) return 0.0;
  const int n = twice / 2;
  return std::sqrt(2.0 * x / kPi) * spherical_j_sequence(n, x)[n];
}

double y_raw(int twice, double x) {
  if (twice % 2 == 0) return bessel_y_sequence(twice / 2, x)[twice / 2];
  const int n = twice / 2;
  return std::sqrt(2.0 * x / kPi) * spherical_y_sequence(n, x)[n];
}

}  // namespace

Order::Order(double nu) : twice_(0) {
  const double twice = 2.0 * nu;
  if (!std::isfinite(nu) || nu < 0.0 || twice != std::floor(twice) || twice > kMaxTwiceOrder) {
    throw std::invalid_argument("Bessel order must be a nonnegative multiple of 1/2 up to " +
                                std::to_string(kMaxTwiceOrder / 2));
  }
  twice_ = static_cast<int>(twice);
}

Order::Order(Twice t) : twice_(t.v) {
  if (t.v < 0 || t.v > kMaxTwiceOrder) throw std::invalid_argument("Bessel order out of range");
}

Order Order::integer(int n) { return Order(Twice{2 * n}); }

Order Order::half_odd(int n) { return Order(Twice{2 * n + 1}); }

std::vector<double> bessel_j_sequence(int nmax, double x) {
  require_finite_nonnegative(x, "bessel_j");
  if (nmax < 0) throw std::invalid_argument("bessel_j_sequence: nmax must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const int start = backward_start(nmax, x);
  double next = 0.0;  // f_{n+1}
  double cur = 1.0;   // f_n
  double norm = 0.0;  // f_0 + 2 sum f_2k
  for (int n = start; n >= 1; --n) {
    if (n <= nmax) out[n] = cur;
    if (n % 2 == 0) norm += 2.0 * cur;
    const double prev = 2.0 * n / x * cur - next;
    next = cur;
    cur = prev;
    if (std::abs(cur) > kRescaleAbove) {
      cur *= kRescaleBy;
      next *= kRescaleBy;
      norm *= kRescaleBy;
      for (int i = n; i <= nmax; ++i) out[i] *= kRescaleBy;
    }
  }
  out[0] = cur;
  norm += cur;
  for (double& v : out) v /= norm;
  return out;
}

std::vector<double> bessel_y_sequence(int nmax, double x) {
  require_positive(x, "bessel_y");
  if (nmax < 0) throw std::invalid_argument("bessel_y_sequence: nmax must be >= 0");
  const auto [y0, y1] = integer_y01(x);
  std::vector<double> y(static_cast<std::size_t>(std::max(nmax, 1)) + 1);
  y[0] = y0;
  y[1] = y1;
  for (int n = 1; n < nmax; ++n) y[n + 1] = 2.0 * n / x * y[n] - y[n - 1];
  y.resize(static_cast<std::size_t>(nmax) + 1);
  return y;
}

double bessel_j(Order order, double x) {
  require_finite_nonnegative(x, "bessel_j");
  return j_raw(order.twice(), x);
}

double bessel_y(Order order, double x) {
  require_positive(x, "bessel_y");
  return y_raw(order.twice(), x);
}

std::complex<double> hankel1(Order order, double x) {
  require_positive(x, "hankel1");
  return {j_raw(order.twice(), x), y_raw(order.twice(), x)};
}

double bessel_j_derivative(Order order, double x) {
  require_finite_nonnegative(x, "bessel_j_derivative");
  if (x == 0.0) {
    if (order.twice() == 2) return 0.5;
    if (order.is_integer()) return 0.0;
    throw std::domain_error("bessel_j_derivative: unbounded at x = 0 for order 1/2");
  }
  return order.value() / x * j_raw(order.twice(), x) - j_raw(order.twice() + 2, x);
}

double bessel_y_derivative(Order order, double x) {
  require_positive(x, "bessel_y_derivative");
  return order.value() / x * y_raw(order.twice(), x) - y_raw(order.twice() + 2, x);
}

double bessel_zero(Order order, int m) {
  if (m < 1) throw std::invalid_argument("bessel_zero: m must be >= 1");
  const double nu = order.value();
  if (order.twice() == 1) return m * kPi;

  // Consecutive zeros are more than pi apart beyond the first, so a scan with
  // this step cannot step over two of them. J_nu > 0 on (0, j_{nu,1}) and
  // j_{nu,1} > nu.
  constexpr double kStep = 0.25;
  double lo = std::max(nu, 0.1);
  double f_lo = bessel_j(order, lo);
  int found = 0;
  double hi = lo;
  double f_hi = f_lo;
  while (true) {
    hi = lo + kStep;
    f_hi = bessel_j(order, hi);
    if (f_hi == 0.0) {
      if (++found == m) return hi;
      lo = hi + 1e-9;
      f_lo = bessel_j(order, lo);
      continue;
    }
    if ((f_lo < 0.0) != (f_hi < 0.0) && ++found == m) break;
    lo = hi;
    f_lo = f_hi;
  }

  // Safeguarded Newton seeded by McMahon's estimate when it lands in the bracket.
  const double mcmahon = (m + 0.5 * nu - 0.25) * kPi;
  double x = (mcmahon > lo && mcmahon < hi) ? mcmahon : 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double f = bessel_j(order, x);
    if (f == 0.0) return x;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = x;
      f_lo = f;
    } else {
      hi = x;
    }
    const double df = bessel_j_derivative(order, x);
    double next = x - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4e-16 * x || hi - lo <= 4e-16 * x) return next;
    x = next;
  }
  return x;
}

std::complex<double> fundamental_solution(double k, Point2 x) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("fundamental_solution: k must be > 0");
  const double r = norm(x);
  if (!(r > 0.0)) throw std::domain_error("fundamental_solution: singular at x = 0");
  const double kr = k * r;
  const double j0 = bessel_j_sequence(0, kr)[0];
  const double y0 = integer_y01(kr).first;
  return std::complex<double>(0.0, 0.25) * std::complex<double>(j0, y0);
}

}  // namespace positivity::specfun
