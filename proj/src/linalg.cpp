#include "positivity/linalg.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "positivity/errors.hpp"

namespace positivity::linalg {

namespace {

void check_inputs(const Matrix& a, const Vector& b) {
  if (a.rows() < 1 || a.cols() < 1) throw InputError("lstsq: matrix must be nonempty");
  if (b.size() != a.rows()) throw InputError("lstsq: right-hand side length does not match rows");
  if (!a.allFinite() || !b.allFinite()) throw InputError("lstsq: non-finite entries");
}

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value) || value < 0.0) {
    throw InputError("invalid " + std::string(what) + " parameter '" + std::string(text) + "'");
  }
  return value;
}

LeastSquaresSolution finish(const Matrix& a, const Vector& b, Vector x, int rank, double threshold) {
  LeastSquaresSolution sol;
  sol.residual_norm = (a * x - b).norm();
  sol.coefficients = std::move(x);
  sol.effective_rank = rank;
  sol.truncation_threshold = threshold;
  return sol;
}

}  // namespace

Mode parse_mode(std::string_view text) {
  if (text == "qr") return QrPivot{};
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  if (name == "tsvd") {
    if (colon == std::string_view::npos) return Tsvd{};
    return Tsvd{parse_number(text.substr(colon + 1), "tsvd")};
  }
  if (name == "tikhonov") {
    if (colon == std::string_view::npos) return Tikhonov{};
    return Tikhonov{parse_number(text.substr(colon + 1), "tikhonov")};
  }
  throw InputError("unknown least-squares mode '" + std::string(text) + "'");
}

std::string describe_mode(const Mode& mode) {
  // Shortest representation that parses back to the same double.
  const auto shortest = [](double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  return std::visit(
      [&](const auto& m) -> std::string {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, QrPivot>) return "qr";
        else if constexpr (std::is_same_v<T, Tsvd>) return "tsvd:" + shortest(m.threshold);
        else return "tikhonov:" + shortest(m.alpha);
      },
      mode);
}

LeastSquaresSolution lstsq(const Matrix& a, const Vector& b, const Mode& mode) {
  check_inputs(a, b);
  if (a.isZero(0.0)) return finish(a, b, Vector::Zero(a.cols()), 0, 0.0);

  if (std::holds_alternative<QrPivot>(mode)) {
    Eigen::ColPivHouseholderQR<Matrix> qr(a);
    const double pivot_cut = qr.threshold() * std::abs(qr.maxPivot());
    // Basic solution on the revealed rank; Eigen's solve keeps every
    // nonzero pivot, which amplifies rounding along near-null directions.
    const Eigen::Index r = qr.rank();
    const Vector qtb = qr.householderQ().adjoint() * b;
    Vector z = Vector::Zero(a.cols());
    z.head(r) = qr.matrixQR().topLeftCorner(r, r).triangularView<Eigen::Upper>().solve(qtb.head(r));
    return finish(a, b, qr.colsPermutation() * z, static_cast<int>(r), pivot_cut);
  }

  Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = dec.singularValues();
  const Vector utb = dec.matrixU().transpose() * b;
  Vector filtered = Vector::Zero(s.size());
  int rank = 0;
  double threshold = 0.0;
  if (const auto* t = std::get_if<Tsvd>(&mode)) {
    threshold = t->threshold * s(0);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > threshold) {
        filtered(i) = utb(i) / s(i);
        ++rank;
      }
    }
  } else {
    const double alpha = std::get<Tikhonov>(mode).alpha;
    threshold = alpha;
    // With alpha = 0 this is the pseudoinverse at working precision.
    const double floor = std::numeric_limits<double>::epsilon() * std::max(a.rows(), a.cols()) * s(0);
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) <= floor) continue;
      filtered(i) = s(i) * utb(i) / (s(i) * s(i) + alpha * alpha);
      if (s(i) > alpha) ++rank;
    }
  }
  return finish(a, b, dec.matrixV() * filtered, rank, threshold);
}

ComplexLeastSquaresSolution lstsq(const ComplexMatrix& a, const ComplexVector& b, const Mode& mode) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  Matrix big(2 * m, 2 * n);
  big << a.real(), -a.imag(), a.imag(), a.real();
  Vector rhs(2 * m);
  rhs << b.real(), b.imag();
  const LeastSquaresSolution real = lstsq(big, rhs, mode);
  ComplexLeastSquaresSolution sol;
  sol.coefficients = real.coefficients.head(n).cast<std::complex<double>>() +
                     std::complex<double>(0.0, 1.0) * real.coefficients.tail(n).cast<std::complex<double>>();
  sol.residual_norm = real.residual_norm;
  sol.effective_rank = real.effective_rank;
  sol.truncation_threshold = real.truncation_threshold;
  return sol;
}

Svd svd(const Matrix& a) {
  if (!a.allFinite()) throw InputError("svd: non-finite entries");
  Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

QrFactors qr_pivot(const Matrix& a) {
  if (!a.allFinite()) throw InputError("qr_pivot: non-finite entries");
  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  const Eigen::Index r = std::min(a.rows(), a.cols());
  QrFactors f;
  f.q = qr.householderQ() * Matrix::Identity(a.rows(), r);
  f.r = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  f.permutation = qr.colsPermutation().indices();
  f.rank = static_cast<int>(qr.rank());
  return f;
}

}  // namespace positivity::linalg
