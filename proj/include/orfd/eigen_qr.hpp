#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace orfd {

struct EigenOptions {
  /// Deflate when |h(i,i-1)| <= tol (|h(i-1,i-1)| + |h(i,i)|).
  double tol = 1e-12;
  Eigen::Index max_dimension = 1024;
  /// The total QR sweep budget is max_sweeps_per_dim * n.
  int max_sweeps_per_dim = 100;
  bool balance = true;
};

struct EigenvalueResult {
  /// Sorted by (Im, Re) ascending.  When converged is false this holds only
  /// the eigenvalues deflated before the sweep budget ran out.
  std::vector<std::complex<double>> values;
  bool converged = false;
  int iterations = 0;
};

/// Radix-2 diagonal similarity scaling (in place); returns the scaling vector.
Eigen::VectorXd balance_matrix(Eigen::MatrixXd& A);

/// Householder reduction to upper Hessenberg form (in place).
void reduce_to_hessenberg(Eigen::MatrixXd& A);

/// Eigenvalues of an upper Hessenberg matrix by Francis double-shift QR.
EigenvalueResult hessenberg_eigenvalues(Eigen::MatrixXd H, const EigenOptions& opts = {});

/// Balance, reduce and iterate.  Throws ValidationError for non-square input,
/// non-finite entries or n above the dimension cap.
EigenvalueResult dense_eigenvalues(const Eigen::MatrixXd& A, const EigenOptions& opts = {});

/// In-place sort by (Im, Re) ascending.
void sort_eigenvalues(std::vector<std::complex<double>>& values);

}  // namespace orfd
