#include "orfd/shear.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "orfd/errors.hpp"

namespace orfd {

Tridiagonal assemble_Ah_unchecked(const Grid& grid) {
  const Eigen::Index n = grid.N();
  const double s = grid.inv_h2();
  Tridiagonal A(n);
  A.diag.setConstant(2.0 * s);
  A.diag(n - 1) = s;
  A.lower.setConstant(-s);
  A.upper.setConstant(-s);
  return A;
}

Tridiagonal assemble_M_unchecked(const Grid& grid) {
  const Eigen::Index n = grid.N();
  Tridiagonal M(n);
  M.diag.setConstant(0.5);
  M.diag(n - 1) = 0.75;
  M.lower.setConstant(0.25);
  M.upper.setConstant(0.25);
  return M;
}

Tridiagonal assemble_Ah(const Grid& grid) {
  require_assembly_size(grid);
  return assemble_Ah_unchecked(grid);
}

Tridiagonal assemble_M(const Grid& grid) {
  require_assembly_size(grid);
  return assemble_M_unchecked(grid);
}

ShearSolveWorkspace::ShearSolveWorkspace(const BeamCoefficients& coeffs, const Grid& grid)
    : coeffs_(coeffs), grid_(grid), Ah_(assemble_Ah(grid)), M_(assemble_M(grid)) {
  validate(coeffs);
  S_ = combine(coeffs.C, Ah_, coeffs.P, M_);
  S_lu_ = TridiagonalLU(S_);

  const double h = grid.h();
  kc_ = coeffs.C / coeffs.P - 0.25 * h * h;
  // Largest eigenvalue of A_h, from the closed form.
  const double s = std::sin((2.0 * grid.N() - 1.0) * std::numbers::pi / (4.0 * grid.N() + 2.0));
  const double lambda_max = 4.0 * grid.inv_h2() * s * s;
  k_ok_ = kc_ * lambda_max + 1.0 > 0.0;
  if (k_ok_) k_lu_ = TridiagonalLU(shift(scaled(Ah_, kc_), 1.0));
}

const TridiagonalLU& ShearSolveWorkspace::k_lu() const {
  if (!k_ok_) {
    throw NumericalError("k-route operator (C/P - h^2/4) A_h + I is not positive definite");
  }
  return k_lu_;
}

Eigen::VectorXd solve_shear(const ShearSolveWorkspace& ws, const BeamCoefficients& coeffs,
                            const Grid& grid, const Eigen::VectorXd& y) {
  if (!(ws.coeffs() == coeffs) || !(ws.grid() == grid)) {
    throw std::logic_error("shear workspace is stale for the requested coefficients or grid");
  }
  if (y.size() != grid.N()) throw ValidationError("solve_shear: y must have length N");
  const double scale = coeffs.B / (2.0 * grid.h());
  return scale * ws.shear_lu().solve(ws.Ah().apply(y));
}

Eigen::VectorXd solve_k(const ShearSolveWorkspace& ws, const Eigen::VectorXd& y) {
  if (y.size() != ws.grid().N()) throw ValidationError("solve_k: y must have length N");
  return ws.k_lu().solve(y);
}

Eigen::VectorXd phi_from_k(const ShearSolveWorkspace& ws, const Eigen::VectorXd& k) {
  const auto& c = ws.coeffs();
  return (c.B / (2.0 * c.P * ws.grid().h())) * ws.Ah().apply(k);
}

Eigen::MatrixXd shear_response(const ShearSolveWorkspace& ws) {
  return ws.shear_lu().solve(ws.Ah().to_dense());
}

Eigen::MatrixXd j_operator(const ShearSolveWorkspace& ws) {
  const auto& c = ws.coeffs();
  const Eigen::Index n = ws.grid().N();
  Eigen::MatrixXd J = Eigen::MatrixXd::Identity(n, n) / c.C;
  J -= (c.P / c.C) * ws.shear_lu().solve(ws.M().to_dense());
  return J;
}

Eigen::VectorXd extend_phi(const Eigen::VectorXd& phi, PhiClosure closure) {
  const Eigen::Index n = phi.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n + 2);
  out.segment(1, n) = phi;
  if (closure == PhiClosure::Neumann && n > 0) out(n + 1) = phi(n - 1);
  return out;
}

}  // namespace orfd
