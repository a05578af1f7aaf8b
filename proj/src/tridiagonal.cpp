#include "orfd/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "orfd/errors.hpp"

namespace orfd {

Eigen::VectorXd Tridiagonal::apply(const Eigen::VectorXd& x) const {
  const Eigen::Index n = size();
  if (x.size() != n) throw ValidationError("tridiagonal apply: size mismatch");
  Eigen::VectorXd y = diag.cwiseProduct(x);
  if (n > 1) {
    y.head(n - 1) += upper.cwiseProduct(x.tail(n - 1));
    y.tail(n - 1) += lower.cwiseProduct(x.head(n - 1));
  }
  return y;
}

Eigen::MatrixXd Tridiagonal::to_dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    A(i, i) = diag(i);
    if (i + 1 < n) {
      A(i, i + 1) = upper(i);
      A(i + 1, i) = lower(i);
    }
  }
  return A;
}

Tridiagonal combine(double a, const Tridiagonal& X, double b, const Tridiagonal& Y) {
  if (X.size() != Y.size()) throw ValidationError("tridiagonal combine: size mismatch");
  Tridiagonal R(X.size());
  R.lower = a * X.lower + b * Y.lower;
  R.diag = a * X.diag + b * Y.diag;
  R.upper = a * X.upper + b * Y.upper;
  return R;
}

Tridiagonal scaled(const Tridiagonal& X, double s) {
  Tridiagonal R = X;
  R.lower *= s;
  R.diag *= s;
  R.upper *= s;
  return R;
}

Tridiagonal shift(const Tridiagonal& X, double s) {
  Tridiagonal R = X;
  R.diag.array() += s;
  return R;
}

TridiagonalLU::TridiagonalLU(const Tridiagonal& T) {
  const Eigen::Index n = T.size();
  if (n == 0) throw ValidationError("tridiagonal LU: empty matrix");
  dl_ = T.lower;
  d_ = T.diag;
  du_ = T.upper;
  du2_ = Eigen::VectorXd::Zero(n > 2 ? n - 2 : 0);
  piv_.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) piv_(i) = static_cast<int>(i);

  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (std::abs(d_(i)) >= std::abs(dl_(i))) {
      if (d_(i) != 0.0) {
        const double f = dl_(i) / d_(i);
        dl_(i) = f;
        d_(i + 1) -= f * du_(i);
      }
    } else {
      // Swap rows i and i+1.
      const double f = d_(i) / dl_(i);
      d_(i) = dl_(i);
      dl_(i) = f;
      const double tmp = du_(i);
      du_(i) = d_(i + 1);
      d_(i + 1) = tmp - f * d_(i + 1);
      if (i + 2 < n) {
        du2_(i) = du_(i + 1);
        du_(i + 1) = -f * du_(i + 1);
      }
      piv_(i) = static_cast<int>(i + 1);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (d_(i) == 0.0 || !std::isfinite(d_(i))) {
      throw NumericalError("tridiagonal LU: zero pivot at row " + std::to_string(i));
    }
  }
}

Eigen::VectorXd TridiagonalLU::solve(const Eigen::VectorXd& b) const {
  const Eigen::Index n = size();
  if (b.size() != n) throw ValidationError("tridiagonal solve: size mismatch");
  Eigen::VectorXd x = b;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (piv_(i) == i) {
      x(i + 1) -= dl_(i) * x(i);
    } else {
      const double t = x(i);
      x(i) = x(i + 1);
      x(i + 1) = t - dl_(i) * x(i);
    }
  }
  x(n - 1) /= d_(n - 1);
  if (n > 1) x(n - 2) = (x(n - 2) - du_(n - 2) * x(n - 1)) / d_(n - 2);
  for (Eigen::Index i = n - 3; i >= 0; --i) {
    x(i) = (x(i) - du_(i) * x(i + 1) - du2_(i) * x(i + 2)) / d_(i);
  }
  return x;
}

Eigen::MatrixXd TridiagonalLU::solve(const Eigen::MatrixXd& B) const {
  Eigen::MatrixXd X(B.rows(), B.cols());
  for (Eigen::Index j = 0; j < B.cols(); ++j) X.col(j) = solve(Eigen::VectorXd(B.col(j)));
  return X;
}

}  // namespace orfd
