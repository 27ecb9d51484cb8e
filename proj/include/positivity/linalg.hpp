#pragma once

// Dense least squares for the boundary fits and the fundamental-solution
// solver. Factorisations are Eigen's; this layer fixes the regularisation
// modes and the reported diagnostics.

#include <Eigen/Dense>
#include <string>
#include <string_view>
#include <variant>

namespace positivity::linalg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultTsvdThreshold = 1e-12;

/// Householder QR with column pivoting; rank revealed by the pivots.
struct QrPivot {};
/// Truncated SVD: singular values below threshold * sigma_max are dropped.
struct Tsvd {
  double threshold = kDefaultTsvdThreshold;
};
/// Minimises |Ax - b|^2 + alpha^2 |x|^2.
struct Tikhonov {
  double alpha = 0.0;
};

using Mode = std::variant<QrPivot, Tsvd, Tikhonov>;

/// Parses "qr", "tsvd:<t>" or "tikhonov:<alpha>". Throws InputError.
Mode parse_mode(std::string_view text);
std::string describe_mode(const Mode& mode);

struct LeastSquaresSolution {
  Vector coefficients;
  double residual_norm = 0.0;  // |A x - b|_2, recomputed from x
  int effective_rank = 0;
  double truncation_threshold = 0.0;  // absolute cut on singular values / pivots, or alpha
};

struct ComplexLeastSquaresSolution {
  ComplexVector coefficients;
  double residual_norm = 0.0;
  int effective_rank = 0;
  double truncation_threshold = 0.0;
};

/// Regularised least squares. Throws InputError on non-finite entries or
/// mismatched sizes. A zero matrix yields x = 0 with residual |b|.
LeastSquaresSolution lstsq(const Matrix& a, const Vector& b, const Mode& mode);

/// Complex least squares through the equivalent real system
/// [Re A, -Im A; Im A, Re A] [Re x; Im x] = [Re b; Im b].
ComplexLeastSquaresSolution lstsq(const ComplexMatrix& a, const ComplexVector& b, const Mode& mode);

struct Svd {
  Matrix u;                // rows x r
  Vector singular_values;  // nonincreasing, r = min(rows, cols)
  Matrix v;                // cols x r
};

Svd svd(const Matrix& a);

struct QrFactors {
  Matrix q;  // rows x r, orthonormal columns
  Matrix r;  // r x cols, upper trapezoidal
  Eigen::VectorXi permutation;  // column j of R corresponds to column permutation[j] of A
  int rank = 0;
};

/// Thin column-pivoted Householder QR: A P = Q R.
QrFactors qr_pivot(const Matrix& a);

}  // namespace positivity::linalg
