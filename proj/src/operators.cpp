#include "orfd/operators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "orfd/errors.hpp"

namespace orfd {

std::string to_string(Scheme scheme) { return scheme == Scheme::ORFD ? "ORFD" : "FD"; }

Scheme parse_scheme(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "ORFD") return Scheme::ORFD;
  if (upper == "FD") return Scheme::FD;
  throw ValidationError("unknown scheme '" + std::string(text) + "' (expected ORFD or FD)");
}

Eigen::MatrixXd OperatorBundle::damping() const {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(size(), size());
  D(damping_index, damping_index) = xi;
  return D;
}

Eigen::VectorXd extend_with_ghosts(const Eigen::VectorXd& z) {
  const Eigen::Index N = z.size() - 1;
  if (N < 1) throw ValidationError("displacement vector must hold z_1..z_{N+1}");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(N + 4);
  e.segment(2, N + 1) = z;
  e(N + 3) = 2.0 * z(N) - z(N - 1);
  return e;
}

Eigen::VectorXd shear_source(const Eigen::VectorXd& z) {
  const Eigen::VectorXd e = extend_with_ghosts(z);
  const Eigen::Index N = z.size() - 1;
  Eigen::VectorXd y(N);
  for (Eigen::Index i = 1; i <= N; ++i) y(i - 1) = e(i + 2) - e(i);
  return y;
}

namespace {

void check_inputs(const BeamCoefficients& coeffs, const Grid& grid, double xi) {
  validate(coeffs);
  require_assembly_size(grid);
  if (!std::isfinite(xi) || xi < 0.0) throw ValidationError("xi must be non-negative");
}

void check_length(const OperatorBundle& b, const Eigen::VectorXd& z) {
  if (z.size() != b.size()) throw ValidationError("state vector must hold z_1..z_{N+1}");
}

// Ghost map: rows z_{-1}..z_{N+2}, columns z_1..z_{N+1}.
Eigen::MatrixXd ghost_matrix(Eigen::Index N) {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(N + 4, N + 1);
  for (Eigen::Index i = 1; i <= N + 1; ++i) G(i + 1, i - 1) = 1.0;
  G(N + 3, N) = 2.0;
  G(N + 3, N - 1) = -1.0;
  return G;
}

// Rows 1..N of the five-point fourth difference on the ghost-extended vector.
Eigen::MatrixXd fourth_difference(Eigen::Index N, double inv_h4) {
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(N, N + 4);
  const double c[5] = {1.0, -4.0, 6.0, -4.0, 1.0};
  for (Eigen::Index i = 1; i <= N; ++i) {
    for (int k = 0; k < 5; ++k) W(i - 1, i - 1 + k) = c[k] * inv_h4;
  }
  return W;
}

Eigen::MatrixXd orfd_stiffness_dense(const BeamCoefficients& c, const Grid& grid,
                                     const ShearSolveWorkspace& ws) {
  const Eigen::Index N = grid.N();
  const Eigen::Index n = N + 1;
  const double h = grid.h();
  const double s = grid.inv_h2();

  // delta^2 z_j for j = 0..N, using z_{-1} = z_0 = 0.
  Eigen::MatrixXd D2 = Eigen::MatrixXd::Zero(N + 1, n);
  for (Eigen::Index j = 0; j <= N; ++j) {
    if (j >= 2) D2(j, j - 2) = s;
    if (j >= 1) D2(j, j - 1) = -2.0 * s;
    D2(j, j) = s;
  }
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(N, n);
  for (Eigen::Index i = 1; i <= N; ++i) {
    Y(i - 1, i) = 1.0;
    if (i >= 2) Y(i - 1, i - 2) = -1.0;
  }
  const Eigen::MatrixXd R = shear_response(ws);
  // Hessian of the potential part of E_h, then rows 1..N are divided by h.
  Eigen::MatrixXd H = h * D2.transpose() * D2 + (c.B * c.B / (4.0 * h)) * Y.transpose() * R * Y;
  H.topRows(N) /= h;
  return H;
}

Eigen::MatrixXd fd_stiffness_dense(const BeamCoefficients& c, const Grid& grid,
                                   const Tridiagonal& shear_op) {
  const Eigen::Index N = grid.N();
  const double inv_h = N + 1.0;
  const double inv_h3 = grid.inv_h2() * inv_h;
  const Eigen::MatrixXd G = ghost_matrix(N);

  Eigen::MatrixXd T3 = Eigen::MatrixXd::Zero(N, N + 4);
  for (Eigen::Index i = 1; i <= N; ++i) {
    T3(i - 1, i + 3) = inv_h3;
    T3(i - 1, i + 2) = -3.0 * inv_h3;
    T3(i - 1, i + 1) = 3.0 * inv_h3;
    T3(i - 1, i) = -inv_h3;
  }
  const Eigen::MatrixXd Phi =
      shear_op.to_dense().partialPivLu().solve(-0.5 * c.B * (T3 * G));

  Eigen::MatrixXd Dfwd = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index i = 0; i + 1 < N; ++i) {
    Dfwd(i, i) = -1.0;
    Dfwd(i, i + 1) = 1.0;
  }

  Eigen::MatrixXd K(N + 1, N + 1);
  K.topRows(N) = fourth_difference(N, grid.inv_h2() * grid.inv_h2()) * G - c.B * inv_h * Dfwd * Phi;

  Eigen::RowVectorXd tip = Eigen::RowVectorXd::Zero(N + 4);
  tip(N + 3) = inv_h3;
  tip(N + 1) = -3.0 * inv_h3;
  tip(N) = 3.0 * inv_h3;
  tip(N - 1) = -inv_h3;
  K.row(N) = tip * G - c.B * Phi.row(N - 1);
  return K;
}

}  // namespace

OperatorBundle assemble_orfd(const BeamCoefficients& coeffs, const Grid& grid, double xi) {
  check_inputs(coeffs, grid, xi);
  const Eigen::Index N = grid.N();
  OperatorBundle b;
  b.scheme = Scheme::ORFD;
  b.grid = grid;
  b.coeffs = coeffs;
  b.xi = xi;
  b.damping_index = N;
  b.shear = std::make_shared<const ShearSolveWorkspace>(coeffs, grid);

  b.mass = Tridiagonal(N + 1);
  b.mass.diag.setConstant(0.5);
  b.mass.lower.setConstant(0.25);
  b.mass.upper.setConstant(0.25);
  b.mass.diag(N) = 0.25 * grid.h();
  b.mass.lower(N - 1) = 0.25 * grid.h();
  b.mass_lu = std::make_shared<const TridiagonalLU>(b.mass);

  b.stiffness = orfd_stiffness_dense(coeffs, grid, *b.shear);
  return b;
}

OperatorBundle assemble_fd(const BeamCoefficients& coeffs, const Grid& grid, double xi) {
  check_inputs(coeffs, grid, xi);
  const Eigen::Index N = grid.N();
  OperatorBundle b;
  b.scheme = Scheme::FD;
  b.grid = grid;
  b.coeffs = coeffs;
  b.xi = xi;
  b.damping_index = N;
  b.shear = std::make_shared<const ShearSolveWorkspace>(coeffs, grid);

  b.mass = Tridiagonal(N + 1);
  b.mass.diag.setOnes();
  b.mass.diag(N) = 0.0;

  b.fd_shear_operator = shift(scaled(assemble_Ah(grid), coeffs.C), coeffs.P);
  b.fd_shear_lu = std::make_shared<const TridiagonalLU>(b.fd_shear_operator);
  b.stiffness = fd_stiffness_dense(coeffs, grid, b.fd_shear_operator);
  return b;
}

OperatorBundle assemble(Scheme scheme, const BeamCoefficients& coeffs, const Grid& grid,
                        double xi) {
  return scheme == Scheme::ORFD ? assemble_orfd(coeffs, grid, xi) : assemble_fd(coeffs, grid, xi);
}

Eigen::VectorXd orfd_phi(const OperatorBundle& bundle, const Eigen::VectorXd& z) {
  check_length(bundle, z);
  return solve_shear(*bundle.shear, bundle.coeffs, bundle.grid, shear_source(z));
}

Eigen::VectorXd fd_phi(const OperatorBundle& bundle, const Eigen::VectorXd& z) {
  if (bundle.scheme != Scheme::FD) throw ValidationError("fd_phi requires an FD bundle");
  check_length(bundle, z);
  const Eigen::Index N = bundle.grid.N();
  const double inv_h3 = bundle.grid.inv_h2() * (N + 1.0);
  const Eigen::VectorXd e = extend_with_ghosts(z);
  Eigen::VectorXd d3(N);
  for (Eigen::Index i = 1; i <= N; ++i) {
    // e(i + 1) holds z_i.
    d3(i - 1) = (e(i + 3) - 3.0 * e(i + 2) + 3.0 * e(i + 1) - e(i)) * inv_h3;
  }
  return bundle.fd_shear_lu->solve(Eigen::VectorXd(-0.5 * bundle.coeffs.B * d3));
}

Eigen::VectorXd apply_stiffness(const OperatorBundle& bundle, const Eigen::VectorXd& z) {
  check_length(bundle, z);
  const Eigen::Index N = bundle.grid.N();
  const double B = bundle.coeffs.B;
  const double inv_h = N + 1.0;
  const double inv_h3 = bundle.grid.inv_h2() * inv_h;
  const double inv_h4 = bundle.grid.inv_h2() * bundle.grid.inv_h2();
  const Eigen::VectorXd e = extend_with_ghosts(z);
  auto Z = [&e](Eigen::Index i) { return e(i + 1); };

  Eigen::VectorXd out(N + 1);
  if (bundle.scheme == Scheme::ORFD) {
    const Eigen::VectorXd phi = extend_phi(orfd_phi(bundle, z), PhiClosure::Zero);
    for (Eigen::Index i = 1; i <= N; ++i) {
      const double d4 = (Z(i + 2) - 4.0 * Z(i + 1) + 6.0 * Z(i) - 4.0 * Z(i - 1) + Z(i - 2)) * inv_h4;
      out(i - 1) = d4 - 0.5 * B * inv_h * (phi(i + 1) - phi(i - 1));
    }
    const double d3 = (Z(N + 2) - 3.0 * Z(N + 1) + 3.0 * Z(N) - Z(N - 1)) * inv_h3;
    out(N) = -d3 + 0.5 * B * phi(N);
  } else {
    const Eigen::VectorXd phi = extend_phi(fd_phi(bundle, z), PhiClosure::Neumann);
    for (Eigen::Index i = 1; i <= N; ++i) {
      const double d4 = (Z(i + 2) - 4.0 * Z(i + 1) + 6.0 * Z(i) - 4.0 * Z(i - 1) + Z(i - 2)) * inv_h4;
      out(i - 1) = d4 - B * inv_h * (phi(i + 1) - phi(i));
    }
    const double g = (Z(N + 2) - 3.0 * Z(N) + 3.0 * Z(N - 1) - Z(N - 2)) * inv_h3 - B * phi(N);
    out(N) = g;
  }
  return out;
}

double FirstOrderSystem::sensor(const Eigen::VectorXd& x) const {
  return to_full.row(to_full.rows() - 1).dot(x);
}

namespace {

double fd_tip_pivot(const OperatorBundle& b) {
  const Eigen::Index N = b.grid.N();
  const double kss = b.stiffness(N, N);
  if (!(std::abs(kss) > 1e-14 * b.stiffness.cwiseAbs().maxCoeff())) {
    throw NumericalError("FD tip row cannot be solved for z_{N+1}");
  }
  return kss;
}

}  // namespace

FirstOrderSystem to_first_order(const OperatorBundle& b) {
  const Eigen::Index N = b.grid.N();
  const Eigen::Index n = N + 1;
  const Eigen::MatrixXd& K = b.stiffness;
  FirstOrderSystem sys;

  if (b.scheme == Scheme::ORFD) {
    if (!b.mass_lu) throw NumericalError("ORFD mass matrix has no factorization");
    sys.A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    sys.A.topRightCorner(n, n).setIdentity();
    sys.A.bottomLeftCorner(n, n) = -b.mass_lu->solve(K);
    if (b.xi != 0.0) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e(b.damping_index) = b.xi;
      sys.A.bottomRightCorner(n, n).col(b.damping_index) = -b.mass_lu->solve(e);
    }
    sys.to_full = Eigen::MatrixXd::Identity(2 * n, 2 * n);
    sys.from_full = sys.to_full;
    return sys;
  }

  for (Eigen::Index i = 0; i < N; ++i) {
    if (b.mass.diag(i) != 1.0) throw NumericalError("FD interior mass must be the identity");
  }

  if (b.xi > 0.0) {
    const Eigen::Index d = 2 * N + 1;
    sys.A = Eigen::MatrixXd::Zero(d, d);
    sys.A.block(0, N + 1, N, N).setIdentity();
    sys.A.row(N).head(n) = -K.row(N) / b.xi;
    sys.A.block(N + 1, 0, N, n) = -K.topRows(N);
    sys.to_full = Eigen::MatrixXd::Zero(2 * n, d);
    sys.to_full.topLeftCorner(n, n).setIdentity();
    sys.to_full.block(n, N + 1, N, N).setIdentity();
    sys.to_full.row(2 * n - 1) = sys.A.row(N);
    sys.from_full = Eigen::MatrixXd::Zero(d, 2 * n);
    sys.from_full.topLeftCorner(n, n).setIdentity();
    sys.from_full.block(N + 1, n, N, N).setIdentity();
    return sys;
  }

  const double kss = fd_tip_pivot(b);
  const Eigen::RowVectorXd ksq = K.row(N).head(N);
  const Eigen::MatrixXd Kr = K.topLeftCorner(N, N) - K.col(N).head(N) * ksq / kss;
  sys.A = Eigen::MatrixXd::Zero(2 * N, 2 * N);
  sys.A.topRightCorner(N, N).setIdentity();
  sys.A.bottomLeftCorner(N, N) = -Kr;
  sys.to_full = Eigen::MatrixXd::Zero(2 * n, 2 * N);
  sys.to_full.topLeftCorner(N, N).setIdentity();
  sys.to_full.row(N).head(N) = -ksq / kss;
  sys.to_full.block(n, N, N, N).setIdentity();
  sys.to_full.row(2 * n - 1).tail(N) = -ksq / kss;
  sys.from_full = Eigen::MatrixXd::Zero(2 * N, 2 * n);
  sys.from_full.topLeftCorner(N, N).setIdentity();
  sys.from_full.block(N, n, N, N).setIdentity();
  return sys;
}

Eigen::VectorXd apply_first_order(const OperatorBundle& b, const Eigen::VectorXd& x) {
  const Eigen::Index N = b.grid.N();
  const Eigen::Index n = N + 1;

  if (b.scheme == Scheme::ORFD) {
    if (x.size() != 2 * n) throw ValidationError("ORFD state must have length 2N+2");
    Eigen::VectorXd out(2 * n);
    out.head(n) = x.tail(n);
    Eigen::VectorXd force = apply_stiffness(b, x.head(n));
    force(b.damping_index) += b.xi * x(n + b.damping_index);
    out.tail(n) = -b.mass_lu->solve(force);
    return out;
  }

  if (b.xi > 0.0) {
    if (x.size() != 2 * N + 1) throw ValidationError("FD closed-loop state must have length 2N+1");
    const Eigen::VectorXd Kz = apply_stiffness(b, x.head(n));
    Eigen::VectorXd out(2 * N + 1);
    out.head(N) = x.tail(N);
    out(N) = -Kz(N) / b.xi;
    out.tail(N) = -Kz.head(N);
    return out;
  }

  if (x.size() != 2 * N) throw ValidationError("FD open-loop state must have length 2N");
  Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd tip = Eigen::VectorXd::Zero(n);
  tip(N) = 1.0;
  const double kss = apply_stiffness(b, tip)(N);
  z.head(N) = x.head(N);
  z(N) = -apply_stiffness(b, z)(N) / kss;
  Eigen::VectorXd out(2 * N);
  out.head(N) = x.tail(N);
  out.tail(N) = -apply_stiffness(b, z).head(N);
  return out;
}

}  // namespace orfd
