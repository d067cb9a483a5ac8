// Reference computations used only by the tests. Each one avoids the code
// path it is checking (Eigen's own solvers instead of ours, enumeration
// instead of the active-set method, closed forms instead of RK4).
#ifndef NAGUMO_TESTS_ORACLES_HPP
#define NAGUMO_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols,
                            double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = u(rng);
  }
  return m;
}

inline Vector random_normal(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (Eigen::Index k = 0; k < n; ++k) v(k) = g(rng);
  return v;
}

inline Matrix random_spd(std::mt19937_64& rng, Eigen::Index n, double floor = 0.2) {
  const Matrix b = random_matrix(rng, n, n);
  return b * b.transpose() + floor * Matrix::Identity(n, n);
}

inline Matrix random_skew(std::mt19937_64& rng, Eigen::Index n) {
  const Matrix b = random_matrix(rng, n, n);
  return b - b.transpose();
}

// Largest generalized eigenvalue of (M, Q) by shifted power iteration on
// Q^{-1/2} M Q^{-1/2}.
inline double power_gen_eig_max(const Matrix& m, const Matrix& q) {
  Eigen::SelfAdjointEigenSolver<Matrix> qe(q);
  const Matrix q_inv_sqrt = qe.operatorInverseSqrt();
  Matrix c = q_inv_sqrt * m * q_inv_sqrt;
  c = 0.5 * (c + c.transpose()).eval();
  const double shift = c.norm() + 1.0;
  const Matrix shifted = c + shift * Matrix::Identity(c.rows(), c.cols());
  Vector v = Vector::Ones(c.rows()) / std::sqrt(static_cast<double>(c.rows()));
  // Break symmetry so v has a component along the top eigenvector.
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) += 1e-3 * static_cast<double>(k + 1);
  v.normalize();
  double rq = v.dot(c * v);
  for (int it = 0; it < 400000; ++it) {
    Vector w = shifted * v;
    w.normalize();
    const double next = w.dot(c * w);
    const bool settled = std::abs(next - rq) <= 1e-16 * (1.0 + std::abs(next)) &&
                         (w - v).norm() <= 1e-9;
    v = w;
    rq = next;
    if (settled) break;
  }
  return rq;
}

// min 1/2 ||X a - f||^2 s.t. sum(a) = 0 (if sum_to_zero), a_j >= 0 (j != free)
// by solving the equality-constrained problem on every support and keeping
// the primal-feasible ones.
inline double brute_force_qp(const Matrix& x, const Vector& f, int free_index, bool sum_to_zero) {
  const int l = static_cast<int>(x.cols());
  std::vector<int> bounded;
  for (int j = 0; j < l; ++j) {
    if (j != free_index) bounded.push_back(j);
  }
  const int k = static_cast<int>(bounded.size());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    // mask bit set: variable is pinned at zero.
    std::vector<int> support;
    if (free_index >= 0) support.push_back(free_index);
    for (int b = 0; b < k; ++b) {
      if (!(mask & (1u << b))) support.push_back(bounded[b]);
    }
    const int s = static_cast<int>(support.size());
    Vector a = Vector::Zero(l);
    if (s > 0) {
      Matrix xs(x.rows(), s);
      for (int c = 0; c < s; ++c) xs.col(c) = x.col(support[c]);
      const int eqs = sum_to_zero ? 1 : 0;
      Matrix kkt = Matrix::Zero(s + eqs, s + eqs);
      Vector rhs = Vector::Zero(s + eqs);
      kkt.topLeftCorner(s, s) = xs.transpose() * xs;
      rhs.head(s) = xs.transpose() * f;
      if (sum_to_zero) {
        kkt.block(0, s, s, 1).setOnes();
        kkt.block(s, 0, 1, s).setOnes();
      }
      const Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
      for (int c = 0; c < s; ++c) a(support[c]) = sol(c);
    }
    bool ok = !sum_to_zero || std::abs(a.sum()) <= 1e-9;
    for (int j : bounded) ok = ok && a(j) >= -1e-12;
    if (ok) best = std::min(best, 0.5 * (x * a - f).squaredNorm());
  }
  return best;
}

// Euclidean distance from z to {x : x^T Q x <= 1}, Q positive definite.
inline double distance_to_ellipsoid(const Matrix& q, const Vector& z) {
  if (z.dot(q * z) <= 1.0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(q);
  const Vector lam = es.eigenvalues();
  const Vector zt = es.eigenvectors().transpose() * z;
  auto excess = [&](double mu) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
      const double xk = zt(k) / (1.0 + mu * lam(k));
      s += lam(k) * xk * xk;
    }
    return s - 1.0;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (excess(hi) > 0.0) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  Vector xt(lam.size());
  for (Eigen::Index k = 0; k < lam.size(); ++k) xt(k) = zt(k) / (1.0 + hi * lam(k));
  return (xt - zt).norm();
}

// Euclidean distance from z to the Lorenz cone {x^T Q x <= 0, x^T Q u <= 0}.
// Candidates: the apex and every KKT point x = (I + mu Q)^{-1} z on the
// surface with mu >= 0 lying on the right nappe.
inline double distance_to_lorenz(const Matrix& q, const Vector& axis, const Vector& z) {
  const Vector qu = q * axis;
  const double zn = z.norm();
  const double scale = q.norm();
  if (z.dot(q * z) <= 1e-14 * scale * zn * zn && z.dot(qu) <= 1e-14 * scale * zn) return 0.0;

  Eigen::SelfAdjointEigenSolver<Matrix> es(q);
  const Vector lam = es.eigenvalues();
  const Matrix v = es.eigenvectors();
  const Vector zt = v.transpose() * z;
  auto point = [&](double mu) {
    Vector xt(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k) xt(k) = zt(k) / (1.0 + mu * lam(k));
    return xt;
  };
  auto h = [&](double mu) {
    const Vector xt = point(mu);
    double s = 0.0;
    for (Eigen::Index k = 0; k < lam.size(); ++k) s += lam(k) * xt(k) * xt(k);
    return s;
  };

  double best = zn;  // the apex
  auto consider = [&](double mu) {
    const Vector x = v * point(mu);
    if (x.dot(qu) <= 1e-12 * (1.0 + x.norm())) best = std::min(best, (x - z).norm());
  };
  auto bisect = [&](double a, double b) {
    double ha = h(a);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (a + b);
      const double hm = h(mid);
      if ((hm > 0.0) == (ha > 0.0)) {
        a = mid;
        ha = hm;
      } else {
        b = mid;
      }
    }
    consider(0.5 * (a + b));
  };

  const double pole = 1.0 / -lam.minCoeff();
  // Dense logarithmic scan of both intervals around the pole.
  std::vector<double> grid;
  grid.push_back(0.0);
  for (int i = 1; i <= 4000; ++i) {
    grid.push_back(pole * (1.0 - std::pow(10.0, -12.0 * i / 4000.0)));
  }
  for (int i = 4000; i >= 1; --i) grid.push_back(pole * (1.0 + std::pow(10.0, -12.0 * i / 4000.0)));
  for (int i = 1; i <= 4000; ++i) grid.push_back(pole * (1.0 + std::pow(10.0, 12.0 * i / 4000.0)));
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const bool straddles_pole = grid[i] < pole && grid[i + 1] > pole;
    if (straddles_pole) continue;
    const double a = h(grid[i]);
    const double b = h(grid[i + 1]);
    if (a == 0.0) consider(grid[i]);
    if ((a > 0.0) != (b > 0.0)) bisect(grid[i], grid[i + 1]);
  }
  return best;
}

// exp(A t) x0 through Eigen's matrix-function module.
inline Vector exact_linear(const Matrix& a, const Vector& x0, double t) {
  const Matrix at = a * t;
  return at.exp() * x0;
}

}  // namespace oracle

#endif  // NAGUMO_TESTS_ORACLES_HPP
