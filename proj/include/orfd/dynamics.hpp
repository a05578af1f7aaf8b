#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "orfd/operators.hpp"

namespace orfd {

/// Displacements and velocities at x_0..x_{N+1}; entry 0 is the clamped node.
struct BeamState {
  Eigen::VectorXd z;
  Eigen::VectorXd zdot;
  double t = 0.0;
};

BeamState zero_state(const Grid& grid);
/// Throws ValidationError unless both vectors have length N+2 and z_0 = zdot_0 = 0.
void validate_state(const BeamState& state, const Grid& grid);

/// [z_1..z_{N+1}; zdot_1..zdot_{N+1}] and back.
Eigen::VectorXd to_full_vector(const BeamState& state);
BeamState from_full_vector(const Eigen::VectorXd& full, double t = 0.0);

/// E_h = (h/2) sum_{j=0}^{N} ((zdot_j + zdot_{j+1})/2)^2 + (h/2) sum_{j=0}^{N} (d2 z_j)^2
///       + (B/4) sum_{j=1}^{N} phi_j y_j,
/// with phi from the ORFD shear map for either scheme.
double discrete_energy(const OperatorBundle& bundle, const BeamState& state);

/// Implicit midpoint (Cayley) map x+ = (I - dt/2 A)^{-1} (I + dt/2 A) x on the
/// first-order system, with the LU of I - dt/2 A computed once.
class MidpointStepper {
 public:
  /// Throws ValidationError for dt <= 0, NumericalError if I - dt/2 A is singular.
  MidpointStepper(const OperatorBundle& bundle, double dt);
  MidpointStepper(FirstOrderSystem system, double dt);

  const FirstOrderSystem& system() const { return sys_; }
  double dt() const { return dt_; }
  Eigen::VectorXd step(const Eigen::VectorXd& x) const;

  /// State in the system's coordinates.  FD states lose the components the
  /// reduction eliminates (tip velocity, and the tip displacement at xi = 0).
  Eigen::VectorXd project(const BeamState& state) const;
  BeamState lift(const Eigen::VectorXd& x, double t) const;

 private:
  FirstOrderSystem sys_;
  double dt_;
  Eigen::MatrixXd explicit_half_;
  Eigen::PartialPivLU<Eigen::MatrixXd> implicit_half_;
};

/// One step; builds a stepper, so prefer MidpointStepper for repeated steps.
BeamState step(const OperatorBundle& bundle, const BeamState& state, double dt);

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> sensor;
  std::vector<BeamState> snapshots;
  Scheme scheme = Scheme::ORFD;
  double xi = 0.0;
  int N = 0;
  /// Uniform step actually used: T / ceil(T / dt_requested).
  double dt = 0.0;
  long steps = 0;
};

/// Number of uniform steps covering [0, T] with steps no longer than dt.
long step_count(double T, double dt);

/// Records energy and tip velocity at every step (t = 0 included) and a full
/// snapshot every snapshot_stride steps (0 disables snapshots).
TrajectoryRecord simulate(const OperatorBundle& bundle, const BeamState& initial, double T,
                          double dt, long snapshot_stride = 0);

/// Composite trapezoid of samples on a uniform grid.
double trapezoid(const std::vector<double>& values, double dt);

struct ObservabilityCertificate {
  int N = 0;
  double T = 0.0;
  double dt = 0.0;
  /// Trapezoid of (zdot_{N+1})^2 at dt and at dt/2.
  double integral = 0.0;
  double integral_half = 0.0;
  double quadrature_error = 0.0;
  double E0 = 0.0;
  /// (T - 6) E0.
  double theorem_bound = 0.0;
  double condition_margin = 0.0;
  bool condition_holds = false;
  bool satisfied = false;
};

/// integral >= (T - 6) E0 (1 - 1e-6) - |I_dt - I_{dt/2}|.  Requires xi = 0 and T > 6.
ObservabilityCertificate observability_certificate(const OperatorBundle& bundle,
                                                   const BeamState& initial, double T, double dt);

/// z_i = zdot_i = amplitude for a <= x_i <= b (1e-12 tolerance), zero elsewhere
/// and always zero at x_0.
BeamState make_box_initial(const Grid& grid, double amplitude, double a, double b);

/// z_i, zdot_i = amplitude * U[-1, 1) for i = 1..N+1, drawn in the order
/// z_1, zdot_1, z_2, zdot_2, ...
BeamState make_random_initial(const Grid& grid, std::uint64_t seed, double amplitude = 1.0);

}  // namespace orfd
