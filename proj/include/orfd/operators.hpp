#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "orfd/beam_model.hpp"
#include "orfd/grid.hpp"
#include "orfd/shear.hpp"
#include "orfd/tridiagonal.hpp"

namespace orfd {

enum class Scheme { ORFD, FD };

std::string to_string(Scheme scheme);
/// Accepts "ORFD"/"FD" in any letter case.
Scheme parse_scheme(std::string_view text);

/// Second-order system  mass z'' + damping z' + stiffness z = 0  over the free
/// unknowns z_1..z_{N+1}.  Immutable after assembly; safe to share read-only.
///
/// ORFD rows 1..N:  (1/4)(z''_{i-1} + 2 z''_i + z''_{i+1}) + d4 z_i
///                  - (B/2h)(phi_{i+1} - phi_{i-1}) = 0,  phi_0 = phi_{N+1} = 0
/// ORFD tip row:    (h/4)(z''_{N+1} + z''_N) - d3 z_{N+1/2} + (B/2) phi_N + xi z'_{N+1} = 0
///
/// FD rows 1..N:    z''_i + d4 z_i - (B/h)(phi_{i+1} - phi_i) = 0,  phi_{N+1} = phi_N
/// FD tip row:      g(z) + xi z'_{N+1} = 0,
///                  g = (z_{N+2} - 3 z_N + 3 z_{N-1} - z_{N-2})/h^3 - B phi_N
struct OperatorBundle {
  Scheme scheme = Scheme::ORFD;
  Grid grid{3};
  BeamCoefficients coeffs;
  double xi = 0.0;
  Tridiagonal mass;
  /// Factorized mass (ORFD only; the FD mass is singular in its tip row).
  std::shared_ptr<const TridiagonalLU> mass_lu;
  /// Dense stiffness assembled by matrix algebra, independently of the
  /// stencil loops behind apply_stiffness.
  Eigen::MatrixXd stiffness;
  /// The damping operator is xi at (damping_index, damping_index), zero elsewhere.
  Eigen::Index damping_index = 0;
  /// The ORFD shear map; also used by the discrete energy of both schemes.
  std::shared_ptr<const ShearSolveWorkspace> shear;
  /// FD shear operator C A_h + P I and its factorization (FD only).
  Tridiagonal fd_shear_operator;
  std::shared_ptr<const TridiagonalLU> fd_shear_lu;

  Eigen::Index size() const { return grid.N() + 1; }
  Eigen::MatrixXd damping() const;
};

OperatorBundle assemble_orfd(const BeamCoefficients& coeffs, const Grid& grid, double xi);
OperatorBundle assemble_fd(const BeamCoefficients& coeffs, const Grid& grid, double xi);
OperatorBundle assemble(Scheme scheme, const BeamCoefficients& coeffs, const Grid& grid,
                        double xi);

/// z_{-1}..z_{N+2} from z_1..z_{N+1}: z_{-1} = z_0 = 0, z_{N+2} = 2 z_{N+1} - z_N.
/// Entry i+1 of the result holds z_i.
Eigen::VectorXd extend_with_ghosts(const Eigen::VectorXd& z);

/// y_i = z_{i+1} - z_{i-1}, i = 1..N.
Eigen::VectorXd shear_source(const Eigen::VectorXd& z);

/// ORFD phi_1..phi_N for the free displacements z_1..z_{N+1}.
Eigen::VectorXd orfd_phi(const OperatorBundle& bundle, const Eigen::VectorXd& z);
/// FD phi_1..phi_N from (C A_h + P I) phi = -(B/2) d3.  FD bundles only.
Eigen::VectorXd fd_phi(const OperatorBundle& bundle, const Eigen::VectorXd& z);

/// Stencil evaluation of the stiffness rows, with the shear recomputed by a
/// banded solve.
Eigen::VectorXd apply_stiffness(const OperatorBundle& bundle, const Eigen::VectorXd& z);

/// x' = A x.  ORFD: x = [z; z'] over z_1..z_{N+1}.  FD has no tip inertia, so
/// the state is reduced: for xi > 0, x = [z_1..z_{N+1}; z'_1..z'_N] and the
/// tip velocity is -(tip row of stiffness * z)/xi; for xi = 0, z_{N+1} is
/// eliminated through the tip row and x = [z_1..z_N; z'_1..z'_N].
struct FirstOrderSystem {
  Eigen::MatrixXd A;
  /// Maps x to [z_1..z_{N+1}; z'_1..z'_{N+1}].
  Eigen::MatrixXd to_full;
  /// Left inverse of to_full on its range (a coordinate selection).
  Eigen::MatrixXd from_full;

  Eigen::Index dimension() const { return A.rows(); }
  /// z'_{N+1}, the tip velocity sensor.
  double sensor(const Eigen::VectorXd& x) const;
};

/// Throws NumericalError when the mass is singular beyond the FD tip row.
FirstOrderSystem to_first_order(const OperatorBundle& bundle);

/// Matrix-free A x for the state layout of to_first_order, using banded mass
/// and shear solves.
Eigen::VectorXd apply_first_order(const OperatorBundle& bundle, const Eigen::VectorXd& x);

}  // namespace orfd
