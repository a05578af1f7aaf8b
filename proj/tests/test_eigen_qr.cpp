#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>

#include "orfd/eigen_qr.hpp"
#include "orfd/errors.hpp"
#include "test_support.hpp"

using namespace orfd;
using namespace orfd::test;
using cd = std::complex<double>;

TEST_CASE("small closed forms") {
  SUBCASE("rotation block") {
    Eigen::Matrix2d A;
    A << 0, 1, -4, 0;
    const auto r = dense_eigenvalues(A);
    REQUIRE(r.converged);
    REQUIRE(r.values.size() == 2);
    CHECK(std::abs(r.values[0] - cd(0, -2)) <= 1e-14);
    CHECK(std::abs(r.values[1] - cd(0, 2)) <= 1e-14);
  }
  SUBCASE("diagonal") {
    const Eigen::Matrix3d A = Eigen::Vector3d(3, 1, 2).asDiagonal();
    const auto r = dense_eigenvalues(A);
    REQUIRE(r.values.size() == 3);
    for (int i = 0; i < 3; ++i) CHECK(r.values[i] == cd(i + 1.0, 0.0));
  }
  SUBCASE("companion of (x-1)(x-2)(x-3)") {
    Eigen::Matrix3d A;
    A << 6, -11, 6, 1, 0, 0, 0, 1, 0;
    const auto r = dense_eigenvalues(A);
    REQUIRE(r.converged);
    for (int i = 0; i < 3; ++i) {
      CHECK(std::abs(r.values[i].real() - (i + 1.0)) <= 1e-10);
      CHECK(r.values[i].imag() == 0.0);
    }
  }
  SUBCASE("empty and 1x1") {
    CHECK(dense_eigenvalues(Eigen::MatrixXd(0, 0)).values.empty());
    const auto r = dense_eigenvalues(Eigen::MatrixXd::Constant(1, 1, -7.5));
    CHECK(r.values.at(0) == cd(-7.5, 0.0));
  }
}

TEST_CASE("agrees with an independent dense solver") {
  for (int n : {5, 17, 40}) {
    Eigen::MatrixXd A(n, n);
    for (int j = 0; j < n; ++j) A.col(j) = random_vector(n, 1000 + n * 100 + j);
    const auto r = dense_eigenvalues(A);
    REQUIRE(r.converged);
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    std::vector<cd> ref(es.eigenvalues().data(), es.eigenvalues().data() + n);
    sort_eigenvalues(ref);
    REQUIRE(r.values.size() == ref.size());
    for (int i = 0; i < n; ++i) CHECK(std::abs(r.values[i] - ref[i]) <= 1e-9 * (1.0 + std::abs(ref[i])));

    cd sum = 0.0;
    for (const auto& v : r.values) sum += v;
    CHECK(std::abs(sum.real() - A.trace()) <= 1e-8 * std::max(1.0, A.cwiseAbs().sum()));
    CHECK(std::abs(sum.imag()) <= 1e-10 * n);
  }
}

TEST_CASE("symmetric input gives real eigenvalues") {
  const int n = 30;
  Eigen::MatrixXd A(n, n);
  for (int j = 0; j < n; ++j) A.col(j) = random_vector(n, 500 + j);
  A = (A + A.transpose()).eval();
  const auto r = dense_eigenvalues(A);
  double rho = 0.0;
  for (const auto& v : r.values) rho = std::max(rho, std::abs(v));
  for (const auto& v : r.values) CHECK(std::abs(v.imag()) <= 1e-10 * rho);
}

TEST_CASE("badly scaled matrix benefits from balancing") {
  Eigen::Matrix3d A;
  A << 1, 1e8, 0, 1e-8, 2, 1e6, 0, 1e-6, 3;
  Eigen::MatrixXd B = A;
  const Eigen::VectorXd d = balance_matrix(B);
  CHECK((d.array() > 0).all());
  // Balancing is a similarity: D^{-1} A D.
  const Eigen::MatrixXd back = d.asDiagonal() * B * d.cwiseInverse().asDiagonal();
  CHECK((back - A).norm() <= 1e-12 * A.norm());
  const auto r = dense_eigenvalues(A);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  std::vector<cd> ref(es.eigenvalues().data(), es.eigenvalues().data() + 3);
  sort_eigenvalues(ref);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(r.values[i] - ref[i]) <= 1e-8);
}

TEST_CASE("Hessenberg reduction is a similarity") {
  const int n = 12;
  Eigen::MatrixXd A(n, n);
  for (int j = 0; j < n; ++j) A.col(j) = random_vector(n, 70 + j);
  Eigen::MatrixXd H = A;
  reduce_to_hessenberg(H);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 2; i < n; ++i) CHECK(H(i, j) == 0.0);
  }
  CHECK(std::abs(H.trace() - A.trace()) <= 1e-12 * A.norm());
  CHECK(std::abs(H.norm() - A.norm()) <= 1e-12 * A.norm());
}

TEST_CASE("errors and partial results") {
  CHECK_THROWS_AS(dense_eigenvalues(Eigen::MatrixXd::Zero(2, 3)), ValidationError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(1, 2) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(dense_eigenvalues(bad), ValidationError);
  EigenOptions small;
  small.max_dimension = 4;
  CHECK_THROWS_AS(dense_eigenvalues(Eigen::MatrixXd::Identity(5, 5), small), ValidationError);

  Eigen::MatrixXd A(8, 8);
  for (int j = 0; j < 8; ++j) A.col(j) = random_vector(8, 300 + j);
  EigenOptions none;
  none.max_sweeps_per_dim = 0;
  const auto r = dense_eigenvalues(A, none);
  CHECK_FALSE(r.converged);
  CHECK(r.values.size() < 8);
}

TEST_CASE("ordering is (Im, Re) ascending") {
  std::vector<cd> v{{1, 1}, {0, -1}, {-1, 1}, {2, 0}, {-3, 0}};
  sort_eigenvalues(v);
  const std::vector<cd> expected{{0, -1}, {-3, 0}, {2, 0}, {-1, 1}, {1, 1}};
  CHECK(v == expected);
}
