#include "orfd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <string>

#include "orfd/errors.hpp"

namespace orfd {

double shared_eigenvector_entry(int N, int k, int j) {
  const long long D = 2LL * N + 1;
  long long m = (static_cast<long long>(j) * (2LL * k - 1)) % (2 * D);
  double sign = 1.0;
  if (m >= D) {
    m -= D;
    sign = -1.0;
  }
  if (2 * m > D) m = D - m;
  return sign * std::sin(static_cast<double>(m) * std::numbers::pi / static_cast<double>(D));
}

double sine_squared(int N, int k) {
  const double s = std::sin((2.0 * k - 1.0) * std::numbers::pi / (4.0 * N + 2.0));
  return s * s;
}

namespace {

EigenPairSet sorted_set(const std::vector<double>& vals, const Eigen::MatrixXd& vecs) {
  std::vector<std::size_t> order(vals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  EigenPairSet set;
  set.provenance = Provenance::Analytic;
  set.vectors.resize(vecs.rows(), vecs.cols());
  for (std::size_t c = 0; c < order.size(); ++c) {
    set.values.emplace_back(vals[order[c]], 0.0);
    set.vectors.col(static_cast<Eigen::Index>(c)) = vecs.col(static_cast<Eigen::Index>(order[c]));
  }
  return set;
}

}  // namespace

AnalyticSpectra analytic_eigenpairs(const Grid& grid) {
  const int N = grid.N();
  const double h2 = grid.h() * grid.h();
  Eigen::MatrixXd V(N, N);
  std::vector<double> la(N), lm(N), lr(N);
  for (int k = 1; k <= N; ++k) {
    for (int j = 1; j <= N; ++j) V(j - 1, k - 1) = shared_eigenvector_entry(N, k, j);
    const double s = sine_squared(N, k);
    la[k - 1] = 4.0 * s * grid.inv_h2();
    lm[k - 1] = 1.0 - s;
    lr[k - 1] = 4.0 * s / (h2 - h2 * s);
  }
  return {sorted_set(la, V), sorted_set(lm, V), sorted_set(lr, V)};
}

GapStatistics gap_statistics(const std::vector<std::complex<double>>& values) {
  double rho = 0.0;
  for (const auto& v : values) rho = std::max(rho, std::abs(v));
  std::vector<double> im;
  for (const auto& v : values) {
    if (v.imag() > 1e-10 * rho) im.push_back(v.imag());
  }
  std::sort(im.begin(), im.end());
  GapStatistics g;
  g.branch_size = static_cast<int>(im.size());
  if (im.size() < 2) return g;
  g.min_gap = im[1] - im[0];
  for (std::size_t i = 2; i < im.size(); ++i) g.min_gap = std::min(g.min_gap, im[i] - im[i - 1]);
  g.top_gap = im[im.size() - 1] - im[im.size() - 2];
  return g;
}

SpectrumReport spectrum_report(const OperatorBundle& bundle, const EigenOptions& opts) {
  const FirstOrderSystem sys = to_first_order(bundle);
  EigenvalueResult eig = dense_eigenvalues(sys.A, opts);
  if (!eig.converged) {
    throw NumericalError("QR iteration did not converge for " + to_string(bundle.scheme) +
                         " N=" + std::to_string(bundle.grid.N()) + " after " +
                         std::to_string(eig.iterations) + " sweeps (" +
                         std::to_string(eig.values.size()) + " of " +
                         std::to_string(sys.dimension()) + " eigenvalues found)");
  }
  SpectrumReport r;
  r.scheme = bundle.scheme;
  r.xi = bundle.xi;
  r.N = bundle.grid.N();
  r.eigenvalues = std::move(eig.values);
  r.iterations = eig.iterations;
  r.max_real = -std::numeric_limits<double>::infinity();
  for (const auto& v : r.eigenvalues) {
    r.max_real = std::max(r.max_real, v.real());
    r.spectral_radius = std::max(r.spectral_radius, std::abs(v));
  }
  const GapStatistics g = gap_statistics(r.eigenvalues);
  r.min_gap = g.min_gap;
  r.top_gap = g.top_gap;
  return r;
}

}  // namespace orfd
