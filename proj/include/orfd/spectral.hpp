#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "orfd/eigen_qr.hpp"
#include "orfd/grid.hpp"
#include "orfd/operators.hpp"

namespace orfd {

enum class Provenance { Analytic, Iterative };

struct EigenPairSet {
  std::vector<std::complex<double>> values;
  /// Column k pairs with values[k]; empty when vectors were not requested.
  Eigen::MatrixXd vectors;
  Provenance provenance = Provenance::Iterative;
};

/// Shared eigenvectors phi^k_j = sin(j (2k-1) pi / (2N+1)), j, k = 1..N.
/// The angle is reduced modulo 2 pi in integer arithmetic before the sine.
double shared_eigenvector_entry(int N, int k, int j);

/// s_k = sin^2((2k-1) pi / (4N+2)).
double sine_squared(int N, int k);

/// lambda_k = 4 s_k / h^2 (A_h), 1 - s_k (M), 4 s_k / (h^2 (1 - s_k)) (M^{-1} A_h).
struct AnalyticSpectra {
  EigenPairSet Ah;
  EigenPairSet M;
  EigenPairSet MinvAh;
};

/// Valid for N >= 1; entries sorted ascending with vectors permuted alongside.
AnalyticSpectra analytic_eigenpairs(const Grid& grid);

struct GapStatistics {
  /// Smallest consecutive difference of the positive imaginary parts.
  double min_gap = 0.0;
  /// Difference of the two largest imaginary parts.
  double top_gap = 0.0;
  /// Number of eigenvalues on the positive-imaginary branch.
  int branch_size = 0;
};

/// Eigenvalues with Im > 1e-10 * spectral radius form the branch; fewer than
/// two of them give zero gaps.
GapStatistics gap_statistics(const std::vector<std::complex<double>>& values);

struct SpectrumReport {
  Scheme scheme = Scheme::ORFD;
  double xi = 0.0;
  int N = 0;
  std::vector<std::complex<double>> eigenvalues;
  double min_gap = 0.0;
  double top_gap = 0.0;
  double max_real = 0.0;
  double spectral_radius = 0.0;
  int iterations = 0;
};

/// Throws NumericalError when the QR iteration does not converge.
SpectrumReport spectrum_report(const OperatorBundle& bundle, const EigenOptions& opts = {});

}  // namespace orfd
