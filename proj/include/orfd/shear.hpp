#pragma once

#include <Eigen/Dense>

#include "orfd/beam_model.hpp"
#include "orfd/grid.hpp"
#include "orfd/tridiagonal.hpp"

namespace orfd {

/// (1/h^2) tridiag(-1, 2, -1) with last diagonal 1/h^2 (u_0 = 0, u_{N+1} = u_N).
/// Requires N >= 3.
Tridiagonal assemble_Ah(const Grid& grid);
/// (1/4) tridiag(1, 2, 1) with last diagonal 3/4.  Requires N >= 3.
Tridiagonal assemble_M(const Grid& grid);

/// Same stencils without the assembly guard; for stencil tests at N = 1, 2.
Tridiagonal assemble_Ah_unchecked(const Grid& grid);
Tridiagonal assemble_M_unchecked(const Grid& grid);

/// Factorizations of C A_h + P M and (C/P - h^2/4) A_h + I for one (B, C, P, N).
class ShearSolveWorkspace {
 public:
  ShearSolveWorkspace(const BeamCoefficients& coeffs, const Grid& grid);

  const BeamCoefficients& coeffs() const { return coeffs_; }
  const Grid& grid() const { return grid_; }
  const Tridiagonal& Ah() const { return Ah_; }
  const Tridiagonal& M() const { return M_; }
  /// C A_h + P M.
  const Tridiagonal& shear_operator() const { return S_; }
  const TridiagonalLU& shear_lu() const { return S_lu_; }
  /// C/P - h^2/4.
  double k_coefficient() const { return kc_; }
  bool k_route_available() const { return k_ok_; }
  const TridiagonalLU& k_lu() const;

 private:
  BeamCoefficients coeffs_;
  Grid grid_;
  Tridiagonal Ah_, M_, S_;
  TridiagonalLU S_lu_, k_lu_;
  double kc_ = 0.0;
  bool k_ok_ = false;
};

/// phi = (B / 2h) (C A_h + P M)^{-1} A_h y.  Throws std::logic_error when the
/// workspace was built for other coefficients or another grid.
Eigen::VectorXd solve_shear(const ShearSolveWorkspace& ws, const BeamCoefficients& coeffs,
                            const Grid& grid, const Eigen::VectorXd& y);

/// k with ((C/P - h^2/4) A_h + I) k = y.  Throws NumericalError when that
/// operator is not positive definite.
Eigen::VectorXd solve_k(const ShearSolveWorkspace& ws, const Eigen::VectorXd& y);

/// phi = (B / (2 P h)) A_h k.
Eigen::VectorXd phi_from_k(const ShearSolveWorkspace& ws, const Eigen::VectorXd& k);

/// Dense shear response map R = (C A_h + P M)^{-1} A_h, so phi = (B/2h) R y.
Eigen::MatrixXd shear_response(const ShearSolveWorkspace& ws);

/// J_h = (1/C) I - (P/C) (C A_h + P M)^{-1} M.
Eigen::MatrixXd j_operator(const ShearSolveWorkspace& ws);

enum class PhiClosure { Neumann, Zero };

/// Returns phi_0..phi_{N+1} with phi_0 = 0 and phi_{N+1} = phi_N (Neumann)
/// or 0 (Zero).
Eigen::VectorXd extend_phi(const Eigen::VectorXd& phi, PhiClosure closure = PhiClosure::Neumann);

}  // namespace orfd
