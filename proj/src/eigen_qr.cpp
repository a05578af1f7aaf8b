#include "orfd/eigen_qr.hpp"

#include <algorithm>
#include <cmath>

#include <string>

#include "orfd/errors.hpp"

namespace orfd {

namespace {

double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

}  // namespace

Eigen::VectorXd balance_matrix(Eigen::MatrixXd& A) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const Eigen::Index n = A.rows();
  Eigen::VectorXd scale = Eigen::VectorXd::Ones(n);
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0;
      double c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(A(j, i));
        r += std::abs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        A.row(i) /= f;
        A.col(i) *= f;
        scale(i) *= f;
      }
    }
  }
  return scale;
}

void reduce_to_hessenberg(Eigen::MatrixXd& H) {
  const Eigen::Index n = H.rows();
  const Eigen::Index high = n - 1;
  Eigen::VectorXd ort = Eigen::VectorXd::Zero(n);
  for (Eigen::Index m = 1; m < high; ++m) {
    double scale = 0.0;
    for (Eigen::Index i = m; i <= high; ++i) scale += std::abs(H(i, m - 1));
    if (scale == 0.0) continue;

    double h = 0.0;
    for (Eigen::Index i = high; i >= m; --i) {
      ort(i) = H(i, m - 1) / scale;
      h += ort(i) * ort(i);
    }
    double g = std::sqrt(h);
    if (ort(m) > 0.0) g = -g;
    h -= ort(m) * g;
    ort(m) -= g;

    // H <- (I - u u^T / h) H (I - u u^T / h)
    for (Eigen::Index j = m; j < n; ++j) {
      double f = 0.0;
      for (Eigen::Index i = high; i >= m; --i) f += ort(i) * H(i, j);
      f /= h;
      for (Eigen::Index i = m; i <= high; ++i) H(i, j) -= f * ort(i);
    }
    for (Eigen::Index i = 0; i <= high; ++i) {
      double f = 0.0;
      for (Eigen::Index j = high; j >= m; --j) f += ort(j) * H(i, j);
      f /= h;
      for (Eigen::Index j = m; j <= high; ++j) H(i, j) -= f * ort(j);
    }
    ort(m) *= scale;
    H(m, m - 1) = scale * g;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 2; i < n; ++i) H(i, j) = 0.0;
  }
}

EigenvalueResult hessenberg_eigenvalues(Eigen::MatrixXd a, const EigenOptions& opts) {
  const Eigen::Index n = a.rows();
  EigenvalueResult res;
  res.values.reserve(static_cast<std::size_t>(n));

  double anorm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = std::max<Eigen::Index>(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
  }

  const long budget = static_cast<long>(opts.max_sweeps_per_dim) * std::max<Eigen::Index>(n, 1);
  long total = 0;
  Eigen::Index nn = n - 1;
  double t = 0.0;  // accumulated exceptional shifts

  while (nn >= 0) {
    int its = 0;
    Eigen::Index l = 0;
    for (;;) {
      for (l = nn; l >= 1; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= opts.tol * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        res.values.emplace_back(x + t, 0.0);
        --nn;
        break;
      }
      double y = a(nn - 1, nn - 1);
      double w = a(nn, nn - 1) * a(nn - 1, nn);
      if (l == nn - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + w;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + sign_of(z, p);
          const double r1 = x + z;
          const double r2 = z != 0.0 ? x - w / z : r1;
          res.values.emplace_back(r1, 0.0);
          res.values.emplace_back(r2, 0.0);
        } else {
          res.values.emplace_back(x + p, z);
          res.values.emplace_back(x + p, -z);
        }
        nn -= 2;
        break;
      }

      if (total >= budget) {
        res.converged = false;
        res.iterations = static_cast<int>(total);
        sort_eigenvalues(res.values);
        return res;
      }
      if (its > 0 && its % 10 == 0) {
        // Exceptional shift.
        t += x;
        for (Eigen::Index i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      ++its;
      ++total;

      Eigen::Index m = nn - 2;
      double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
      for (; m >= l; --m) {
        z = a(m, m);
        r = x - z;
        double s = y - z;
        p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - r - s;
        r = a(m + 2, m + 1);
        s = std::abs(p) + std::abs(q) + std::abs(r);
        p /= s;
        q /= s;
        r /= s;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
        if (u + v == v) break;
      }
      for (Eigen::Index i = m + 2; i <= nn; ++i) {
        a(i, i - 2) = 0.0;
        if (i != m + 2) a(i, i - 3) = 0.0;
      }
      for (Eigen::Index k = m; k <= nn - 1; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (Eigen::Index j = k; j <= nn; ++j) {
          p = a(k, j) + q * a(k + 1, j);
          if (k != nn - 1) {
            p += r * a(k + 2, j);
            a(k + 2, j) -= p * z;
          }
          a(k + 1, j) -= p * y;
          a(k, j) -= p * x;
        }
        const Eigen::Index mmin = std::min(nn, k + 3);
        for (Eigen::Index i = l; i <= mmin; ++i) {
          p = x * a(i, k) + y * a(i, k + 1);
          if (k != nn - 1) {
            p += z * a(i, k + 2);
            a(i, k + 2) -= p * r;
          }
          a(i, k + 1) -= p * q;
          a(i, k) -= p;
        }
      }
    }
  }
  res.converged = true;
  res.iterations = static_cast<int>(total);
  sort_eigenvalues(res.values);
  return res;
}

void sort_eigenvalues(std::vector<std::complex<double>>& values) {
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    if (a.imag() != b.imag()) return a.imag() < b.imag();
    return a.real() < b.real();
  });
}

EigenvalueResult dense_eigenvalues(const Eigen::MatrixXd& A, const EigenOptions& opts) {
  if (A.rows() != A.cols()) throw ValidationError("dense_eigenvalues: matrix must be square");
  if (A.rows() > opts.max_dimension) {
    throw ValidationError("dense_eigenvalues: dimension " + std::to_string(A.rows()) +
                          " exceeds the cap " + std::to_string(opts.max_dimension));
  }
  if (!A.allFinite()) throw ValidationError("dense_eigenvalues: non-finite entries");
  if (A.rows() == 0) return {{}, true, 0};
  Eigen::MatrixXd H = A;
  if (opts.balance) balance_matrix(H);
  reduce_to_hessenberg(H);
  return hessenberg_eigenvalues(std::move(H), opts);
}

}  // namespace orfd
