#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "orfd/dynamics.hpp"
#include "orfd/spectral.hpp"
#include "test_support.hpp"

using namespace orfd;
using namespace orfd::test;

namespace {

struct PoincareSums {
  double max_u2 = 0, max_du2 = 0;
  double sum_u2 = 0, sum_du2 = 0, sum_d2u2 = 0;
};

// u_0..u_{N+1} with u_0 = u_1 = 0.
PoincareSums poincare_sums(const Eigen::VectorXd& u, double h) {
  PoincareSums s;
  const Eigen::Index n = u.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    s.max_u2 = std::max(s.max_u2, u(i) * u(i));
    s.sum_u2 += u(i) * u(i);
  }
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    const double d = (u(j + 1) - u(j)) / h;
    s.max_du2 = std::max(s.max_du2, d * d);
    s.sum_du2 += d * d;
  }
  for (Eigen::Index j = 1; j + 1 < n; ++j) {
    const double d = (u(j + 1) - 2.0 * u(j) + u(j - 1)) / (h * h);
    s.sum_d2u2 += d * d;
  }
  return s;
}

}  // namespace

TEST_CASE("discrete Poincare inequalities on seeded draws") {
  const int N = 32;
  const double h = 1.0 / (N + 1);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Eigen::VectorXd u = random_vector(N + 2, seed);
    u(0) = u(1) = 0.0;
    const PoincareSums s = poincare_sums(u, h);
    CAPTURE(seed);
    CHECK(s.max_u2 <= h * s.sum_du2);
    CHECK(s.max_du2 <= h * s.sum_d2u2);
    CHECK(s.sum_u2 <= s.sum_du2);
    CHECK(s.sum_du2 <= s.sum_d2u2);
  }
}

TEST_CASE("Poincare bounds are nearly attained by a linear ramp") {
  // u_i = (i - 1) h for i >= 1: first differences are h on all but the first
  // interval, so the first bound is tight up to O(h).
  const int N = 32;
  const double h = 1.0 / (N + 1);
  Eigen::VectorXd u(N + 2);
  u(0) = 0.0;
  for (int i = 1; i <= N + 1; ++i) u(i) = (i - 1) * h;
  const PoincareSums s = poincare_sums(u, h);
  CHECK(s.max_u2 <= h * s.sum_du2);
  CHECK(s.max_u2 >= 0.9 * h * s.sum_du2);
}

TEST_CASE("shear response map is symmetric positive semidefinite") {
  for (int N : {3, 8, 32, 100}) {
    for (const BeamCoefficients& c : {table1(), synthetic()}) {
      const ShearSolveWorkspace ws(c, Grid(N));
      const Eigen::MatrixXd R = shear_response(ws);
      CHECK((R - R.transpose()).norm() <= 1e-12 * R.norm());
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Eigen::VectorXd y = random_vector(N, seed);
        CHECK(y.dot(R * y) >= 0.0);
      }
    }
  }
}

TEST_CASE("J_h equals the shear response map") {
  for (int N : {3, 10, 64}) {
    for (const BeamCoefficients& c : {table1(), synthetic(), BeamCoefficients{2.0, 0.5, 7.0, 0.1}}) {
      const ShearSolveWorkspace ws(c, Grid(N));
      const Eigen::MatrixXd J = j_operator(ws);
      const Eigen::MatrixXd R = shear_response(ws);
      CHECK((J - R).norm() <= 1e-12 * R.norm());
      CHECK((J - J.transpose()).norm() <= 1e-12 * J.norm());
    }
  }
}

TEST_CASE("coefficient homogeneity") {
  // Scaling every modulus by s leaves B and C unchanged and scales P by 1/s.
  for (double s : {1e-3, 0.5, 7.0, 1e4}) {
    LayerSpec t = pzt(), c = rubber(), b = aluminium();
    for (LayerSpec* l : {&t, &c, &b}) {
      l->youngs_gpa *= s;
      l->shear_gpa *= s;
    }
    const BeamCoefficients ref = table1();
    const BeamCoefficients got = derive_coefficients(t, c, b);
    CHECK(rel(got.B, ref.B) <= 1e-13);
    CHECK(rel(got.C, ref.C) <= 1e-13);
    CHECK(rel(got.P * s, ref.P) <= 1e-13);
  }
}

TEST_CASE("large-shear margin grows as h shrinks") {
  for (const BeamCoefficients& c : {table1(), synthetic()}) {
    double prev = -INFINITY;
    for (int N : {1, 2, 4, 8, 16, 32, 64}) {
      const double m = large_shear_condition(c, 1.0 / (N + 1)).margin;
      CHECK(m > prev);
      prev = m;
    }
  }
}

TEST_CASE("energy is positive off the origin and conserved over seeds and grids") {
  for (int N : {4, 9, 24}) {
    const Grid g(N);
    for (const BeamCoefficients& c : {table1(), synthetic()}) {
      const OperatorBundle b = assemble_orfd(c, g, 0.0);
      for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const BeamState s0 = make_random_initial(g, seed);
        const double e0 = discrete_energy(b, s0);
        CHECK(e0 > 0.0);
        const TrajectoryRecord r = simulate(b, s0, 2.0, 2.0 / 256);
        for (double e : r.energies) CHECK(rel(e, e0) <= 1e-9);
      }
    }
  }
}

TEST_CASE("open-loop ORFD spectrum lies on the imaginary axis") {
  for (int N : {5, 12, 30}) {
    for (const BeamCoefficients& c : {table1(), synthetic()}) {
      const SpectrumReport r = spectrum_report(assemble_orfd(c, Grid(N), 0.0));
      double max_im = 0.0, max_re = 0.0;
      for (auto v : r.eigenvalues) {
        max_im = std::max(max_im, std::abs(v.imag()));
        max_re = std::max(max_re, std::abs(v.real()));
      }
      CHECK(max_re <= 1e-8 * max_im);
    }
  }
}
