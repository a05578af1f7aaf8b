#pragma once

#include <Eigen/Dense>

namespace orfd {

/// Square tridiagonal matrix stored by diagonals.  lower(i) sits at (i+1, i),
/// upper(i) at (i, i+1).
struct Tridiagonal {
  Eigen::VectorXd lower;
  Eigen::VectorXd diag;
  Eigen::VectorXd upper;

  explicit Tridiagonal(Eigen::Index n = 0)
      : lower(Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0)),
        diag(Eigen::VectorXd::Zero(n)),
        upper(Eigen::VectorXd::Zero(n > 0 ? n - 1 : 0)) {}

  Eigen::Index size() const { return diag.size(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd to_dense() const;
  bool is_symmetric() const { return lower == upper; }
};

/// a*X + b*Y, diagonal by diagonal.
Tridiagonal combine(double a, const Tridiagonal& X, double b, const Tridiagonal& Y);
/// s*X.
Tridiagonal scaled(const Tridiagonal& X, double s);
/// X + s*I.
Tridiagonal shift(const Tridiagonal& X, double s);

/// LU factorization with partial (row) pivoting, the gttrf scheme: U gains a
/// second superdiagonal when rows are swapped.
class TridiagonalLU {
 public:
  TridiagonalLU() = default;
  /// Throws NumericalError when a pivot is exactly zero or not finite.
  explicit TridiagonalLU(const Tridiagonal& T);

  Eigen::Index size() const { return d_.size(); }
  Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& B) const;

 private:
  Eigen::VectorXd dl_;  // multipliers
  Eigen::VectorXd d_;   // U diagonal
  Eigen::VectorXd du_;  // U first superdiagonal
  Eigen::VectorXd du2_; // U second superdiagonal
  Eigen::VectorXi piv_; // piv_(i) = i or i+1
};

}  // namespace orfd
