#pragma once

// Bessel and Hankel functions of integer and half-odd-integer order for real
// nonnegative argument, their positive zeros, and the outgoing fundamental
// solution of the 2D Helmholtz operator.
//
// Integer orders: J by Miller's backward recurrence normalised with
// J_0 + 2 sum J_2k = 1; Y_0, Y_1 by the Neumann series below
// kAsymptoticCrossover and by the Hankel asymptotic expansion above it;
// Y_n, n >= 2, by forward recurrence.
// Half-odd orders: spherical Bessel functions, J_{n+1/2}(x) = sqrt(2x/pi) j_n(x).
//
// All functions are pure and thread-safe.

#include <complex>
#include <vector>

#include "positivity/point.hpp"

namespace positivity::specfun {

/// Largest supported value of 2*nu.
inline constexpr int kMaxTwiceOrder = 120;

/// Argument above which Y_0 and Y_1 switch from the Neumann series to the
/// Hankel asymptotic expansion.
inline constexpr double kAsymptoticCrossover = 25.0;

/// Bessel order nu >= 0 with 2*nu integral.
class Order {
 public:
  /// Throws std::invalid_argument unless nu >= 0, 2*nu is an integer and
  /// 2*nu <= kMaxTwiceOrder.
  explicit Order(double nu);

  static Order integer(int n);
  /// The order n + 1/2.
  static Order half_odd(int n);

  double value() const { return twice_ * 0.5; }
  int twice() const { return twice_; }
  bool is_integer() const { return twice_ % 2 == 0; }

  bool operator==(const Order&) const = default;

 private:
  struct Twice {
    int v;
  };
  explicit Order(Twice t);
  int twice_;
};

/// J_nu(x), x >= 0. Throws std::domain_error for x < 0 or non-finite x.
double bessel_j(Order order, double x);

/// Y_nu(x), x > 0. Throws std::domain_error for x <= 0.
double bessel_y(Order order, double x);

/// H^(1)_nu(x) = J_nu(x) + i Y_nu(x), x > 0. Throws std::domain_error for x <= 0.
std::complex<double> hankel1(Order order, double x);

/// d/dx J_nu(x).
double bessel_j_derivative(Order order, double x);

/// d/dx Y_nu(x).
double bessel_y_derivative(Order order, double x);

/// J_0(x), ..., J_nmax(x) in a single backward recurrence. x >= 0.
std::vector<double> bessel_j_sequence(int nmax, double x);

/// Y_0(x), ..., Y_nmax(x), x > 0.
std::vector<double> bessel_y_sequence(int nmax, double x);

/// The m-th positive zero j_{nu,m} of J_nu, m >= 1. Throws
/// std::invalid_argument for m < 1.
double bessel_zero(Order order, int m);

/// Outgoing fundamental solution of (Delta + k^2) in the plane,
/// Phi_k(x) = (i/4) H^(1)_0(k|x|). Throws std::domain_error at x = 0 or k <= 0.
std::complex<double> fundamental_solution(double k, Point2 x);

}  // namespace positivity::specfun
