#include "nagumo/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nagumo/error.hpp"

namespace nagumo {

namespace {

void check_index(int i, Eigen::Index n, const char* what) {
  if (i < 0 || i >= n) {
    throw Error(ErrorCode::IndexOutOfRange,
                std::string(what) + " index " + std::to_string(i) + " outside [0, " +
                    std::to_string(n) + ")");
  }
}

void check_shapes(const Matrix& m, const Vector& v, const char* what) {
  if (m.cols() == 0) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": no columns");
  }
  if (m.rows() != v.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(m.rows()) + " rows vs target of " +
                    std::to_string(v.size()));
  }
  require_finite(m, what);
  require_finite(v, what);
}

}  // namespace

LPFeasibilityProblem LPFeasibilityProblem::for_vertex(const Matrix& vertices, const Vector& f,
                                                      int i) {
  check_shapes(vertices, f, "vertex problem");
  check_index(i, vertices.cols(), "vertex");
  LPFeasibilityProblem p;
  p.columns.resize(vertices.rows() + 1, vertices.cols());
  p.columns.topRows(vertices.rows()) = vertices;
  p.columns.bottomRows(1).setOnes();
  p.target = Vector::Zero(f.size() + 1);
  p.target.head(f.size()) = f;
  p.free_index = i;
  p.sum_row = true;
  return p;
}

LPFeasibilityProblem LPFeasibilityProblem::for_ray(const Matrix& rays, const Vector& f, int i) {
  check_shapes(rays, f, "ray problem");
  check_index(i, rays.cols(), "ray");
  return LPFeasibilityProblem{rays, f, i, false};
}

QPProblem QPProblem::for_vertex(const Matrix& vertices, const Vector& f, int i) {
  check_shapes(vertices, f, "vertex QP");
  check_index(i, vertices.cols(), "vertex");
  return QPProblem{vertices, f, i, true};
}

QPProblem QPProblem::for_ray(const Matrix& rays, const Vector& f, int i) {
  check_shapes(rays, f, "ray QP");
  check_index(i, rays.cols(), "ray");
  return QPProblem{rays, f, i, false};
}

OptResult lp_feasible(const LPFeasibilityProblem& p, const Tolerances& tol) {
  check_shapes(p.columns, p.target, "lp_feasible");
  const Matrix& a = p.columns;
  const Eigen::Index l = a.cols();
  if (p.free_index >= l) check_index(p.free_index, l, "free");

  OptResult out;
  out.status = OptStatus::Infeasible;

  // Tall problems with independent columns have at most one solution.
  if (a.rows() >= l) {
    const Matrix gram = a.transpose() * a;
    const EigenResult eig = sym_eig(gram, tol);
    if (eig.values(l - 1) > 1e-10 * std::max(1.0, eig.values(0))) {
      out.route = LpRoute::NormalEquations;
      out.alpha = solve_linear(gram, a.transpose() * p.target, tol);
      const double residual = (a * out.alpha - p.target).cwiseAbs().maxCoeff();
      double sign_violation = 0.0;
      for (Eigen::Index j = 0; j < l; ++j) {
        if (j != p.free_index) sign_violation = std::max(sign_violation, -out.alpha(j));
      }
      const bool consistent =
          residual <= tol.lp_residual * (1.0 + p.target.cwiseAbs().maxCoeff());
      const bool signs_ok = sign_violation <= tol.sign_slack;
      out.status = consistent && signs_ok ? OptStatus::Feasible : OptStatus::Infeasible;
      out.objective = out.status == OptStatus::Feasible ? 0.0 : residual + sign_violation;
      return out;
    }
  }

  const bool has_free = p.free_index >= 0;
  LinearProgram lp;
  lp.eq.resize(a.rows(), l + (has_free ? 1 : 0));
  lp.eq.leftCols(l) = a;
  if (has_free) lp.eq.col(l) = -a.col(p.free_index);
  lp.eq_rhs = p.target;
  const LpSolution sol = solve_lp(lp, tol);
  out.route = LpRoute::Simplex;
  out.iterations = sol.iterations;
  out.objective = sol.infeasibility;
  out.alpha = sol.z.head(l);
  if (has_free) out.alpha(p.free_index) -= sol.z(l);
  out.status = sol.status == LpStatus::Infeasible ? OptStatus::Infeasible : OptStatus::Feasible;
  return out;
}

DualCheck lp_dual_check(const LPFeasibilityProblem& p, const OptResult& primal,
                        const std::optional<Vector>& y, const Tolerances& tol) {
  const Matrix& a = p.columns;
  const Eigen::Index l = a.cols();
  const Eigen::Index rows = a.rows();
  if (primal.alpha.size() != l) {
    throw Error(ErrorCode::DimensionMismatch, "lp_dual_check: alpha length");
  }
  DualCheck out;
  // The feasibility LP has a zero objective, so y = 0 is dual optimal
  // whenever the primal is feasible.
  out.y = y ? *y : Vector::Zero(rows);
  if (out.y.size() != rows) {
    throw Error(ErrorCode::DimensionMismatch, "lp_dual_check: y length");
  }
  out.s = Vector::Zero(l);
  const Vector ay = a.transpose() * out.y;
  for (Eigen::Index j = 0; j < l; ++j) {
    if (j != p.free_index) out.s(j) = -ay(j);
  }

  const double scale = 1.0 + p.target.cwiseAbs().maxCoeff();
  auto fail = [&](int row, std::string what, double residual) {
    out.max_residual = std::max(out.max_residual, residual);
    if (out.violated_row < 0) {
      out.violated_row = row;
      out.violated = std::move(what);
    }
  };

  int row = 0;
  for (Eigen::Index j = 0; j < l; ++j, ++row) {
    if (j == p.free_index) continue;
    if (primal.alpha(j) < -tol.sign_slack) {
      fail(row, "alpha_" + std::to_string(j) + " >= 0", -primal.alpha(j));
    }
  }
  const Vector primal_res = a * primal.alpha - p.target;
  for (Eigen::Index r = 0; r < rows; ++r, ++row) {
    const double res = std::abs(primal_res(r));
    out.max_residual = std::max(out.max_residual, res);
    if (res > tol.dual_check * scale) fail(row, "primal equality " + std::to_string(r), res);
  }
  if (p.free_index >= 0) {
    const double res = std::abs(ay(p.free_index));
    out.max_residual = std::max(out.max_residual, res);
    if (res > tol.dual_check * scale) fail(row, "(x~^i)^T y = 0", res);
  }
  ++row;
  for (Eigen::Index j = 0; j < l; ++j, ++row) {
    if (j == p.free_index) continue;
    if (out.s(j) < -tol.dual_check) fail(row, "s_" + std::to_string(j) + " >= 0", -out.s(j));
  }
  for (Eigen::Index j = 0; j < l; ++j, ++row) {
    if (j == p.free_index) continue;
    const double comp = std::abs(primal.alpha(j) * out.s(j));
    if (comp > tol.dual_check * scale) {
      fail(row, "alpha_" + std::to_string(j) + " s_" + std::to_string(j) + " = 0", comp);
    }
  }
  out.ok = out.violated_row < 0;
  return out;
}

LeastSquaresResult solve_constrained_lsq(const LeastSquaresProblem& p, const Vector& start,
                                         int max_changes, [[maybe_unused]] const Tolerances& tol) {
  const Eigen::Index n = p.design.cols();
  const Eigen::Index m_eq = p.eq.rows();
  if (p.design.rows() != p.target.size() || start.size() != n ||
      static_cast<Eigen::Index>(p.nonneg.size()) != n ||
      (m_eq > 0 && (p.eq.cols() != n || p.eq_rhs.size() != m_eq))) {
    throw Error(ErrorCode::DimensionMismatch, "constrained least squares: shapes");
  }

  const Matrix h = p.design.transpose() * p.design;
  const Vector dt = p.design.transpose() * p.target;
  const double mult_scale =
      1e-10 * (1.0 + dt.cwiseAbs().maxCoeff() + (n > 0 ? h.cwiseAbs().maxCoeff() : 0.0) *
                                                    (1.0 + start.cwiseAbs().maxCoeff()));

  LeastSquaresResult out;
  out.w = start;
  std::vector<bool> fixed(static_cast<std::size_t>(n), false);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (p.nonneg[static_cast<std::size_t>(j)]) {
      if (out.w(j) < -1e-12) {
        throw Error(ErrorCode::InvalidArgument, "least-squares start violates a bound");
      }
      if (out.w(j) <= 0.0) {
        out.w(j) = 0.0;
        fixed[static_cast<std::size_t>(j)] = true;
      }
    }
  }
  out.eq_multipliers = Vector::Zero(m_eq);
  out.bound_multipliers = Vector::Zero(n);

  for (;;) {
    std::vector<Eigen::Index> free;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!fixed[static_cast<std::size_t>(j)]) free.push_back(j);
    }
    const Eigen::Index k = static_cast<Eigen::Index>(free.size());
    const Vector g = h * out.w - dt;

    Matrix kkt = Matrix::Zero(k + m_eq, k + m_eq);
    Vector rhs = Vector::Zero(k + m_eq);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) kkt(a, b) = h(free[a], free[b]);
      for (Eigen::Index r = 0; r < m_eq; ++r) {
        kkt(a, k + r) = p.eq(r, free[a]);
        kkt(k + r, a) = p.eq(r, free[a]);
      }
      rhs(a) = -g(free[a]);
    }
    Vector sol = Vector::Zero(k + m_eq);
    if (k + m_eq > 0) sol = kkt.completeOrthogonalDecomposition().solve(rhs);

    Vector step = Vector::Zero(n);
    for (Eigen::Index a = 0; a < k; ++a) step(free[a]) = sol(a);
    const Vector nu = sol.tail(m_eq);

    if (step.cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + out.w.cwiseAbs().maxCoeff()) || k == 0) {
      Vector lambda = g;
      if (m_eq > 0) lambda += p.eq.transpose() * nu;
      Eigen::Index release = -1;
      double most_negative = -mult_scale;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (fixed[static_cast<std::size_t>(j)] && lambda(j) < most_negative) {
          most_negative = lambda(j);
          release = j;
        }
      }
      if (release < 0) {
        out.eq_multipliers = nu;
        out.bound_multipliers.setZero();
        for (Eigen::Index j = 0; j < n; ++j) {
          if (fixed[static_cast<std::size_t>(j)]) out.bound_multipliers(j) = lambda(j);
        }
        break;
      }
      fixed[static_cast<std::size_t>(release)] = false;
      if (++out.changes > max_changes) {
        throw Error(ErrorCode::IterationLimit,
                    "active set changed more than " + std::to_string(max_changes) + " times");
      }
      continue;
    }

    double length = 1.0;
    Eigen::Index blocking = -1;
    for (Eigen::Index j : free) {
      if (!p.nonneg[static_cast<std::size_t>(j)] || step(j) >= 0.0) continue;
      const double ratio = out.w(j) / -step(j);
      if (ratio < length) {
        length = ratio;
        blocking = j;
      }
    }
    out.w += length * step;
    if (blocking >= 0) {
      out.w(blocking) = 0.0;
      fixed[static_cast<std::size_t>(blocking)] = true;
      if (++out.changes > max_changes) {
        throw Error(ErrorCode::IterationLimit,
                    "active set changed more than " + std::to_string(max_changes) + " times");
      }
    }
  }
  out.objective = 0.5 * (p.design * out.w - p.target).squaredNorm();
  return out;
}

OptResult qp_nearest(const QPProblem& p, const Tolerances& tol) {
  check_shapes(p.points, p.target, "qp_nearest");
  const Eigen::Index l = p.points.cols();
  if (p.free_index >= l) check_index(p.free_index, l, "free");

  LeastSquaresProblem ls;
  ls.design = p.points;
  ls.target = p.target;
  if (p.sum_to_zero) {
    ls.eq = Matrix::Ones(1, l);
    ls.eq_rhs = Vector::Zero(1);
  }
  ls.nonneg.assign(static_cast<std::size_t>(l), true);
  if (p.free_index >= 0) ls.nonneg[static_cast<std::size_t>(p.free_index)] = false;

  const LeastSquaresResult r =
      solve_constrained_lsq(ls, Vector::Zero(l), static_cast<int>(10 * l), tol);
  OptResult out;
  out.status = OptStatus::Optimal;
  out.alpha = r.w;
  out.multipliers = r.bound_multipliers;
  if (p.free_index >= 0) {
    out.multipliers(p.free_index) = p.sum_to_zero ? r.eq_multipliers(0) : 0.0;
  }
  out.objective = r.objective;
  out.iterations = r.changes;
  return out;
}

Eigen::Vector4d kkt_residuals(const QPProblem& p, const OptResult& r) {
  const Eigen::Index l = p.points.cols();
  if (r.alpha.size() != l || r.multipliers.size() != l) {
    throw Error(ErrorCode::DimensionMismatch, "kkt_residuals: result length");
  }
  const int i = p.free_index;
  const Vector grad = p.points.transpose() * (p.points * r.alpha - p.target);
  Vector stationarity = grad;
  for (Eigen::Index j = 0; j < l; ++j) {
    if (j == i) {
      if (p.sum_to_zero) stationarity(j) += r.multipliers(i);
    } else {
      if (p.sum_to_zero && i >= 0) stationarity(j) += r.multipliers(i);
      stationarity(j) -= r.multipliers(j);
    }
  }
  double sign = 0.0;
  double comp = 0.0;
  for (Eigen::Index j = 0; j < l; ++j) {
    if (j == i) continue;
    sign = std::max({sign, -r.alpha(j), -r.multipliers(j)});
    comp += r.multipliers(j) * r.alpha(j);
  }
  const double equality = p.sum_to_zero ? std::abs(r.alpha.sum()) : 0.0;
  return {stationarity.norm(), equality, sign, std::abs(comp)};
}

Projection project_convex_hull(const Matrix& points, const Vector& z, const Tolerances& tol) {
  check_shapes(points, z, "project_convex_hull");
  const Eigen::Index l = points.cols();
  LeastSquaresProblem ls{points, z, Matrix::Ones(1, l), Vector::Ones(1),
                         std::vector<bool>(static_cast<std::size_t>(l), true)};
  Vector start = Vector::Zero(l);
  start(0) = 1.0;
  const LeastSquaresResult r = solve_constrained_lsq(ls, start, static_cast<int>(20 * l + 20), tol);
  const Vector x = points * r.w;
  return {x, (x - z).norm()};
}

Projection project_conic_hull(const Matrix& rays, const Vector& z, const Tolerances& tol) {
  check_shapes(rays, z, "project_conic_hull");
  const Eigen::Index l = rays.cols();
  LeastSquaresProblem ls{rays, z, Matrix(0, l), Vector(0),
                         std::vector<bool>(static_cast<std::size_t>(l), true)};
  const LeastSquaresResult r =
      solve_constrained_lsq(ls, Vector::Zero(l), static_cast<int>(20 * l + 20), tol);
  const Vector x = rays * r.w;
  return {x, (x - z).norm()};
}

std::optional<Vector> feasible_point(const Matrix& g, const Vector& b, const Tolerances& tol) {
  const Eigen::Index n = g.cols();
  if (g.rows() == 0) return Vector::Zero(n);
  LinearProgram lp;
  lp.ub.resize(g.rows(), 2 * n);
  lp.ub << g, -g;
  lp.ub_rhs = b;
  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status == LpStatus::Infeasible) return std::nullopt;
  return Vector(sol.z.head(n) - sol.z.tail(n));
}

Projection project_polyhedron(const Matrix& g, const Vector& b, const Vector& z,
                              const Tolerances& tol) {
  const Eigen::Index n = g.cols();
  const Eigen::Index m = g.rows();
  if (b.size() != m || z.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "project_polyhedron: shapes");
  }
  const auto x0 = feasible_point(g, b, tol);
  if (!x0) throw Error(ErrorCode::EmptySet, "polyhedron is empty");

  LeastSquaresProblem ls;
  ls.design = Matrix::Zero(n, n + m);
  ls.design.leftCols(n).setIdentity();
  ls.target = z;
  ls.eq.resize(m, n + m);
  ls.eq << g, Matrix::Identity(m, m);
  ls.eq_rhs = b;
  ls.nonneg.assign(static_cast<std::size_t>(n + m), false);
  for (Eigen::Index k = 0; k < m; ++k) ls.nonneg[static_cast<std::size_t>(n + k)] = true;
  Vector start(n + m);
  start.head(n) = *x0;
  start.tail(m) = (b - g * *x0).cwiseMax(0.0);
  const LeastSquaresResult r =
      solve_constrained_lsq(ls, start, static_cast<int>(20 * (n + m) + 50), tol);
  const Vector x = r.w.head(n);
  return {x, (x - z).norm()};
}

}  // namespace nagumo
