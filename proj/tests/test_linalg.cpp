#include <doctest.h>

#include <cmath>
#include <random>

#include "positivity/errors.hpp"
#include "positivity/linalg.hpp"

using namespace positivity;
using namespace positivity::linalg;

namespace {

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = n(rng);
  return a;
}

Vector random_vector(int n, std::mt19937_64& rng) { return random_matrix(n, 1, rng).col(0); }

double objective(const Matrix& a, const Vector& b, const Vector& x, double alpha) {
  return (a * x - b).squaredNorm() + alpha * alpha * x.squaredNorm();
}

// Largest singular value by power iteration on A^T A.
double power_iteration_norm(const Matrix& a) {
  Vector v = Vector::Ones(a.cols()).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    const Vector w = a.transpose() * (a * v);
    const double next = w.norm();
    v = w / next;
    if (std::abs(next - lambda) <= 1e-15 * next) break;
    lambda = next;
  }
  return std::sqrt(lambda);
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("identity system") {
    const Vector b = Vector::LinSpaced(5, -2.0, 2.0);
    for (const Mode& mode : {Mode{QrPivot{}}, Mode{Tsvd{}}, Mode{Tikhonov{}}}) {
      const LeastSquaresSolution s = lstsq(Matrix::Identity(5, 5), b, mode);
      CHECK((s.coefficients - b).norm() <= 1e-15);
      CHECK(s.residual_norm <= 1e-15);
      CHECK(s.effective_rank == 5);
    }
  }

  TEST_CASE("one-parameter mean") {
    Matrix a(2, 1);
    a << 1, 1;
    Vector b(2);
    b << 0, 2;
    for (const Mode& mode : {Mode{QrPivot{}}, Mode{Tsvd{}}}) {
      const LeastSquaresSolution s = lstsq(a, b, mode);
      CHECK(s.coefficients(0) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(s.residual_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    }
  }

  TEST_CASE("qr and tsvd agree on well-conditioned systems") {
    std::mt19937_64 rng(1);
    const Matrix a = random_matrix(50, 20, rng);
    const Vector b = random_vector(50, rng);
    const Vector x1 = lstsq(a, b, QrPivot{}).coefficients;
    const Vector x2 = lstsq(a, b, Tsvd{1e-12}).coefficients;
    CHECK((x1 - x2).cwiseAbs().maxCoeff() <= 1e-8);
    // Normal equations as an independent oracle.
    const Vector x3 = (a.transpose() * a).llt().solve(a.transpose() * b);
    CHECK((x1 - x3).cwiseAbs().maxCoeff() <= 1e-10);
  }

  TEST_CASE("perturbing the solution never lowers the objective") {
    std::mt19937_64 rng(2);
    const Matrix a = random_matrix(40, 12, rng);
    const Vector b = random_vector(40, rng);
    for (const auto& [mode, alpha] : {std::pair<Mode, double>{QrPivot{}, 0.0}, {Tsvd{}, 0.0}, {Tikhonov{0.5}, 0.5}}) {
      const Vector x = lstsq(a, b, mode).coefficients;
      const double f0 = objective(a, b, x, alpha);
      for (int j = 0; j < x.size(); ++j) {
        for (double h : {1e-6, -1e-6}) {
          Vector y = x;
          y(j) += h;
          CHECK(objective(a, b, y, alpha) >= f0 - 1e-13 * f0);
        }
      }
    }
  }

  TEST_CASE("tikhonov matches the regularised normal equations") {
    std::mt19937_64 rng(3);
    const Matrix a = random_matrix(30, 10, rng);
    const Vector b = random_vector(30, rng);
    for (double alpha : {1e-3, 0.1, 1.0, 10.0}) {
      const Matrix n = a.transpose() * a + alpha * alpha * Matrix::Identity(10, 10);
      const Vector oracle = n.llt().solve(a.transpose() * b);
      CHECK((lstsq(a, b, Tikhonov{alpha}).coefficients - oracle).norm() <= 1e-12 * oracle.norm());
    }
  }

  TEST_CASE("tikhonov solution norm is nonincreasing in alpha") {
    std::mt19937_64 rng(4);
    const Matrix a = random_matrix(25, 15, rng);
    const Vector b = random_vector(25, rng);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha = 0.0; alpha <= 20.0; alpha = alpha == 0.0 ? 1e-4 : alpha * 1.7) {
      const double norm = lstsq(a, b, Tikhonov{alpha}).coefficients.norm();
      CHECK(norm <= prev * (1 + 1e-12));
      prev = norm;
    }
  }

  TEST_CASE("rank-deficient systems") {
    std::mt19937_64 rng(5);
    Matrix a = random_matrix(20, 4, rng);
    a.col(3) = a.col(1);
    const Vector b = random_vector(20, rng);
    const LeastSquaresSolution t = lstsq(a, b, Tsvd{});
    CHECK(t.effective_rank == 3);
    // Minimum-norm solution splits the weight evenly between equal columns.
    CHECK(t.coefficients(1) == doctest::Approx(t.coefficients(3)).epsilon(1e-10));
    const LeastSquaresSolution q = lstsq(a, b, QrPivot{});
    CHECK(q.effective_rank == 3);
    CHECK(q.residual_norm == doctest::Approx(t.residual_norm).epsilon(1e-10));
  }

  TEST_CASE("zero matrix and invalid input") {
    const Vector b = Vector::Constant(3, 2.0);
    const LeastSquaresSolution s = lstsq(Matrix::Zero(3, 2), b, Tsvd{});
    CHECK(s.coefficients.isZero());
    CHECK(s.residual_norm == doctest::Approx(b.norm()));
    CHECK(s.effective_rank == 0);
    Matrix bad = Matrix::Identity(3, 3);
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(lstsq(bad, b, QrPivot{}), InputError);
    CHECK_THROWS_AS(lstsq(Matrix::Identity(4, 4), b, QrPivot{}), InputError);
  }

  TEST_CASE("complex systems") {
    std::mt19937_64 rng(6);
    const ComplexMatrix a = ComplexMatrix(random_matrix(12, 12, rng).cast<std::complex<double>>()) +
                            std::complex<double>(0, 1) * random_matrix(12, 12, rng).cast<std::complex<double>>();
    const ComplexVector x_true = random_vector(12, rng).cast<std::complex<double>>();
    const ComplexVector b = a * x_true;
    for (const Mode& mode : {Mode{QrPivot{}}, Mode{Tsvd{}}}) {
      const ComplexLeastSquaresSolution s = lstsq(a, b, mode);
      CHECK((s.coefficients - x_true).norm() <= 1e-10 * x_true.norm());
      CHECK(s.residual_norm <= 1e-10 * b.norm());
    }
  }

  TEST_CASE("singular values of a diagonal matrix") {
    Matrix d = Matrix::Zero(4, 4);
    d.diagonal() << -3.0, 0.5, 7.0, -1.0;
    const Svd s = svd(d);
    REQUIRE(s.singular_values.size() == 4);
    CHECK(s.singular_values(0) == doctest::Approx(7.0));
    CHECK(s.singular_values(1) == doctest::Approx(3.0));
    CHECK(s.singular_values(2) == doctest::Approx(1.0));
    CHECK(s.singular_values(3) == doctest::Approx(0.5));
  }

  TEST_CASE("rank-one outer product has one significant singular value") {
    std::mt19937_64 rng(7);
    const Vector u = random_vector(9, rng);
    const Vector v = random_vector(6, rng);
    const Svd s = svd(u * v.transpose());
    int above = 0;
    for (int i = 0; i < s.singular_values.size(); ++i) above += s.singular_values(i) > 1e-12 * s.singular_values(0);
    CHECK(above == 1);
    CHECK(s.singular_values(0) == doctest::Approx(u.norm() * v.norm()).epsilon(1e-13));
  }

  TEST_CASE("spectral norm matches power iteration") {
    std::mt19937_64 rng(8);
    const Matrix a = random_matrix(30, 30, rng);
    const Svd s = svd(a);
    CHECK(std::abs(s.singular_values(0) - power_iteration_norm(a)) <= 1e-8 * s.singular_values(0));
    const Matrix back = s.u * s.singular_values.asDiagonal() * s.v.transpose();
    CHECK((back - a).cwiseAbs().maxCoeff() <= 1e-12);
  }

  TEST_CASE("pivoted QR is orthonormal and reconstructs A") {
    std::mt19937_64 rng(9);
    for (auto [rows, cols] : {std::pair{10, 10}, std::pair{120, 40}, std::pair{400, 200}}) {
      const Matrix a = random_matrix(rows, cols, rng);
      const QrFactors f = qr_pivot(a);
      const Matrix gram = f.q.transpose() * f.q;
      CHECK((gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() <= 1e-12);
      Matrix ap(rows, cols);
      for (int j = 0; j < cols; ++j) ap.col(j) = a.col(f.permutation(j));
      CHECK((f.q * f.r - ap).cwiseAbs().maxCoeff() <= 1e-11);
      CHECK(f.rank == std::min(rows, cols));
    }
  }

  TEST_CASE("mode parsing") {
    CHECK(std::holds_alternative<QrPivot>(parse_mode("qr")));
    CHECK(std::get<Tsvd>(parse_mode("tsvd:1e-10")).threshold == 1e-10);
    CHECK(std::get<Tikhonov>(parse_mode("tikhonov:0.25")).alpha == 0.25);
    CHECK(describe_mode(Tsvd{}) == "tsvd:1e-12");
    CHECK(describe_mode(Tikhonov{0.001}) == "tikhonov:0.001");
    for (const Mode& m : {Mode{Tsvd{1e-7}}, Mode{Tikhonov{3.5}}, Mode{QrPivot{}}}) {
      CHECK(describe_mode(parse_mode(describe_mode(m))) == describe_mode(m));
    }
    CHECK_THROWS_AS(parse_mode("lu"), InputError);
    CHECK_THROWS_AS(parse_mode("tsvd:"), InputError);
    CHECK_THROWS_AS(parse_mode("tsvd:-1"), InputError);
    CHECK_THROWS_AS(parse_mode("tikhonov:abc"), InputError);
  }
}
