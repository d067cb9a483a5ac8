#include "nagumo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "nagumo/error.hpp"

namespace nagumo {

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " has non-finite entries");
  }
}

Vector solve_linear(const Matrix& a, const Vector& b, const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_linear: matrix is not square");
  }
  if (b.size() != a.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_linear: rhs length differs from rows");
  }
  require_finite(a, "solve_linear matrix");
  require_finite(b, "solve_linear rhs");

  const Eigen::Index n = a.rows();
  Matrix lu = a;
  Vector x = b;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    lu.col(k).tail(n - k).cwiseAbs().maxCoeff(&p);
    p += k;
    if (std::abs(lu(p, k)) < tol.singular_pivot) {
      throw Error(ErrorCode::SingularMatrix,
                  "pivot " + std::to_string(std::abs(lu(p, k))) + " at column " +
                      std::to_string(k));
    }
    if (p != k) {
      lu.row(p).swap(lu.row(k));
      std::swap(x(p), x(k));
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double factor = lu(i, k) / lu(k, k);
      lu.row(i).tail(n - k) -= factor * lu.row(k).tail(n - k);
      x(i) -= factor * x(k);
    }
  }
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    double s = x(k);
    for (Eigen::Index j = k + 1; j < n; ++j) s -= lu(k, j) * x(j);
    x(k) = s / lu(k, k);
  }
  return x;
}

namespace {

Matrix checked_symmetric(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  }
  require_finite(m, "symmetric matrix");
  const double asym = (m - m.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
  const double scale = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (m.size() > 0 && asym > tol.symmetry * (1.0 + scale)) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix is not symmetric (asymmetry " + std::to_string(asym) + ")");
  }
  return 0.5 * (m + m.transpose());
}

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

}  // namespace

EigenResult sym_eig(const Matrix& m, const Tolerances& tol) {
  Matrix a = checked_symmetric(m, tol);
  const Eigen::Index n = a.rows();
  Matrix v = Matrix::Identity(n, n);
  const double threshold = tol.jacobi_offdiag * a.norm();

  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (++sweep > tol.jacobi_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi exceeded " + std::to_string(tol.jacobi_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        // A <- J^T A J, touching rows/cols p and q only.
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  EigenResult out{Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

Matrix cholesky_lower(const Matrix& q, const Tolerances& tol) {
  const Matrix s = checked_symmetric(q, tol);
  const Eigen::Index n = s.rows();
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pivot = s(j, j) - l.row(j).head(j).squaredNorm();
    if (!(pivot >= tol.spd_pivot)) {
      throw Error(ErrorCode::NotPositiveDefinite,
                  "Cholesky pivot " + std::to_string(pivot) + " at row " + std::to_string(j));
    }
    l(j, j) = std::sqrt(pivot);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      l(i, j) = (s(i, j) - l.row(i).head(j).dot(l.row(j).head(j))) / l(j, j);
    }
  }
  return l;
}

GeneralizedEigenPair gen_eig_max_pair(const Matrix& m, const Matrix& q, const Tolerances& tol) {
  if (m.rows() != q.rows() || m.cols() != q.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "gen_eig_max: M and Q differ in shape");
  }
  const Matrix l = cholesky_lower(q, tol);
  const Matrix sm = checked_symmetric(m, tol);
  const auto lower = l.triangularView<Eigen::Lower>();
  // C = L^{-1} M L^{-T}
  const Matrix left = lower.solve(sm);
  const Matrix c = lower.solve(left.transpose()).transpose();
  const EigenResult eig = sym_eig(0.5 * (c + c.transpose()), tol);
  GeneralizedEigenPair out;
  out.value = eig.values(0);
  out.vector = l.transpose().triangularView<Eigen::Upper>().solve(eig.vectors.col(0));
  return out;
}

double gen_eig_max(const Matrix& m, const Matrix& q, const Tolerances& tol) {
  return gen_eig_max_pair(m, q, tol).value;
}

double lambda_max(const Matrix& m, const Tolerances& tol) { return sym_eig(m, tol).values(0); }

ScalarMinimum minimize_scalar_convex(const std::function<double(double)>& f, double lo,
                                     double hi, double xtol) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw Error(ErrorCode::BadBracket,
                "bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  if (!(xtol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "golden-section tolerance must be positive");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  ScalarMinimum best{x, f(x)};
  // The minimizer may sit on the bracket edge.
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    if (fe < best.value) best = {edge, fe};
  }
  return best;
}

double gershgorin_radius(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double eta_bracket(const Matrix& m, const Matrix& q, const Tolerances& tol) {
  const EigenResult eq = sym_eig(q, tol);
  const double min_abs = eq.values.cwiseAbs().minCoeff();
  return 10.0 * (1.0 + gershgorin_radius(m)) / std::max(1e-6, min_abs);
}

}  // namespace nagumo
