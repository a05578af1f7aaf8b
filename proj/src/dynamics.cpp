#include "orfd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "orfd/errors.hpp"
#include "orfd/random.hpp"

namespace orfd {

BeamState zero_state(const Grid& grid) {
  const Eigen::Index n = grid.N() + 2;
  return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0.0};
}

void validate_state(const BeamState& state, const Grid& grid) {
  const Eigen::Index n = grid.N() + 2;
  if (state.z.size() != n || state.zdot.size() != n) {
    throw ValidationError("state vectors must have length N+2 = " + std::to_string(n));
  }
  if (state.z(0) != 0.0 || state.zdot(0) != 0.0) {
    throw ValidationError("state violates the clamped condition z_0 = zdot_0 = 0");
  }
  if (!state.z.allFinite() || !state.zdot.allFinite()) {
    throw ValidationError("state has non-finite entries");
  }
}

Eigen::VectorXd to_full_vector(const BeamState& s) {
  const Eigen::Index n = s.z.size() - 1;
  Eigen::VectorXd x(2 * n);
  x.head(n) = s.z.tail(n);
  x.tail(n) = s.zdot.tail(n);
  return x;
}

BeamState from_full_vector(const Eigen::VectorXd& full, double t) {
  const Eigen::Index n = full.size() / 2;
  BeamState s{Eigen::VectorXd::Zero(n + 1), Eigen::VectorXd::Zero(n + 1), t};
  s.z.tail(n) = full.head(n);
  s.zdot.tail(n) = full.tail(n);
  return s;
}

double discrete_energy(const OperatorBundle& bundle, const BeamState& state) {
  const Grid& g = bundle.grid;
  validate_state(state, g);
  const int N = g.N();
  const double h = g.h();
  const double s = g.inv_h2();
  const Eigen::VectorXd& z = state.z;
  const Eigen::VectorXd& v = state.zdot;

  double kinetic = 0.0;
  double bending = 0.0;
  for (int j = 0; j <= N; ++j) {
    const double avg = 0.5 * (v(j) + v(j + 1));
    kinetic += avg * avg;
    const double zm = j == 0 ? 0.0 : z(j - 1);
    const double d2 = (z(j + 1) - 2.0 * z(j) + zm) * s;
    bending += d2 * d2;
  }
  const Eigen::VectorXd free = z.tail(N + 1);
  const Eigen::VectorXd y = shear_source(free);
  const Eigen::VectorXd phi = solve_shear(*bundle.shear, bundle.coeffs, g, y);
  return 0.5 * h * (kinetic + bending) + 0.25 * bundle.coeffs.B * phi.dot(y);
}

MidpointStepper::MidpointStepper(const OperatorBundle& bundle, double dt)
    : MidpointStepper(to_first_order(bundle), dt) {}

MidpointStepper::MidpointStepper(FirstOrderSystem system, double dt)
    : sys_(std::move(system)), dt_(dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be positive");
  const Eigen::Index n = sys_.dimension();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  explicit_half_ = I + 0.5 * dt * sys_.A;
  implicit_half_.compute(I - 0.5 * dt * sys_.A);
  const Eigen::VectorXd u = implicit_half_.matrixLU().diagonal().cwiseAbs();
  if (!(u.minCoeff() > static_cast<double>(n) * std::numeric_limits<double>::epsilon() * u.maxCoeff())) {
    throw NumericalError("I - (dt/2) A is singular to working precision at dt = " +
                         std::to_string(dt));
  }
}

Eigen::VectorXd MidpointStepper::step(const Eigen::VectorXd& x) const {
  return implicit_half_.solve(explicit_half_ * x);
}

Eigen::VectorXd MidpointStepper::project(const BeamState& state) const {
  return sys_.from_full * to_full_vector(state);
}

BeamState MidpointStepper::lift(const Eigen::VectorXd& x, double t) const {
  return from_full_vector(sys_.to_full * x, t);
}

BeamState step(const OperatorBundle& bundle, const BeamState& state, double dt) {
  validate_state(state, bundle.grid);
  const MidpointStepper stepper(bundle, dt);
  return stepper.lift(stepper.step(stepper.project(state)), state.t + dt);
}

long step_count(double T, double dt) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ValidationError("T must be positive");
  if (!(dt > 0.0) || !(dt <= T)) throw ValidationError("dt must satisfy 0 < dt <= T");
  const double ratio = T / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * nearest) return static_cast<long>(nearest);
  return static_cast<long>(std::ceil(ratio));
}

TrajectoryRecord simulate(const OperatorBundle& bundle, const BeamState& initial, double T,
                          double dt, long snapshot_stride) {
  validate_state(initial, bundle.grid);
  if (snapshot_stride < 0) throw ValidationError("snapshot_stride must be non-negative");
  const long steps = step_count(T, dt);
  const double h = T / static_cast<double>(steps);
  const MidpointStepper stepper(bundle, h);

  TrajectoryRecord rec;
  rec.scheme = bundle.scheme;
  rec.xi = bundle.xi;
  rec.N = bundle.grid.N();
  rec.dt = h;
  rec.steps = steps;
  rec.times.reserve(static_cast<std::size_t>(steps) + 1);
  rec.energies.reserve(static_cast<std::size_t>(steps) + 1);
  rec.sensor.reserve(static_cast<std::size_t>(steps) + 1);

  Eigen::VectorXd x = stepper.project(initial);
  for (long k = 0; k <= steps; ++k) {
    if (k > 0) x = stepper.step(x);
    const double t = static_cast<double>(k) * h;
    const BeamState s = stepper.lift(x, t);
    rec.times.push_back(t);
    rec.energies.push_back(discrete_energy(bundle, s));
    rec.sensor.push_back(s.zdot(s.zdot.size() - 1));
    if (snapshot_stride > 0 && k % snapshot_stride == 0) rec.snapshots.push_back(s);
    if (!x.allFinite()) throw NumericalError("state became non-finite at t = " + std::to_string(t));
  }
  return rec;
}

double trapezoid(const std::vector<double>& f, double dt) {
  if (f.size() < 2) return 0.0;
  double sum = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) sum += f[i];
  return dt * sum;
}

namespace {

double sensor_integral(const OperatorBundle& bundle, const BeamState& initial, double T,
                       double dt) {
  const TrajectoryRecord rec = simulate(bundle, initial, T, dt);
  std::vector<double> sq(rec.sensor.size());
  std::transform(rec.sensor.begin(), rec.sensor.end(), sq.begin(), [](double v) { return v * v; });
  return trapezoid(sq, rec.dt);
}

}  // namespace

ObservabilityCertificate observability_certificate(const OperatorBundle& bundle,
                                                   const BeamState& initial, double T,
                                                   double dt) {
  if (bundle.xi != 0.0) throw ValidationError("observability certificate requires xi = 0");
  if (!(T > 6.0)) throw ValidationError("observability certificate requires T > 6");
  validate_state(initial, bundle.grid);

  ObservabilityCertificate c;
  c.N = bundle.grid.N();
  c.T = T;
  c.dt = T / static_cast<double>(step_count(T, dt));
  c.integral = sensor_integral(bundle, initial, T, c.dt);
  c.integral_half = sensor_integral(bundle, initial, T, 0.5 * c.dt);
  c.quadrature_error = std::abs(c.integral - c.integral_half);

  // The energy of the state the integrator actually starts from.
  const MidpointStepper probe(bundle, c.dt);
  c.E0 = discrete_energy(bundle, probe.lift(probe.project(initial), 0.0));
  c.theorem_bound = (T - 6.0) * c.E0;

  const ShearCondition cond = large_shear_condition(bundle.coeffs, bundle.grid.h());
  c.condition_margin = cond.margin;
  c.condition_holds = cond.holds;
  c.satisfied = c.integral >= c.theorem_bound * (1.0 - 1e-6) - c.quadrature_error;
  return c;
}

BeamState make_box_initial(const Grid& grid, double amplitude, double a, double b) {
  if (!std::isfinite(amplitude)) throw ValidationError("initial.amplitude must be finite");
  if (!(0.0 <= a && a < b && b <= 1.0)) {
    throw ValidationError("box support [a, b] must satisfy 0 <= a < b <= 1");
  }
  BeamState s = zero_state(grid);
  for (int i = 1; i <= grid.N() + 1; ++i) {
    const double x = grid.x(i);
    if (x >= a - 1e-12 && x <= b + 1e-12) {
      s.z(i) = amplitude;
      s.zdot(i) = amplitude;
    }
  }
  return s;
}

BeamState make_random_initial(const Grid& grid, std::uint64_t seed, double amplitude) {
  if (!std::isfinite(amplitude)) throw ValidationError("initial.amplitude must be finite");
  Rng rng(seed);
  BeamState s = zero_state(grid);
  for (int i = 1; i <= grid.N() + 1; ++i) {
    s.z(i) = amplitude * rng.symmetric();
    s.zdot(i) = amplitude * rng.symmetric();
  }
  return s;
}

}  // namespace orfd
