#ifndef NAGUMO_SOLVERS_HPP
#define NAGUMO_SOLVERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nagumo/config.hpp"
#include "nagumo/lp.hpp"
#include "nagumo/numerics.hpp"

namespace nagumo {

// Feasibility of  columns * alpha = target,  alpha_j >= 0 for j != free_index.
//
// For a vertex x^i of a polytope the columns are the vertices lifted with a
// trailing 1 and the target is (f, 0): the last row pins sum(alpha) = 0, so
// alpha_i = -sum_{j != i} alpha_j and the system reads
// f = sum_{j != i} alpha_j (x^j - x^i). For an extreme ray the columns are the
// rays themselves and alpha_i is the free coefficient on x^i.
struct LPFeasibilityProblem {
  Matrix columns;
  Vector target;
  int free_index = -1;
  bool sum_row = false;  // last row of `columns` is all ones, last target 0

  static LPFeasibilityProblem for_vertex(const Matrix& vertices, const Vector& f, int i);
  static LPFeasibilityProblem for_ray(const Matrix& rays, const Vector& f, int i);

  Eigen::Index size() const { return columns.cols(); }
};

// min 1/2 ||points * alpha - target||^2  s.t.  sum(alpha) = 0 (vertex form
// only),  alpha_j >= 0 for j != free_index.
struct QPProblem {
  Matrix points;
  Vector target;
  int free_index = -1;
  bool sum_to_zero = true;

  static QPProblem for_vertex(const Matrix& vertices, const Vector& f, int i);
  static QPProblem for_ray(const Matrix& rays, const Vector& f, int i);

  Eigen::Index size() const { return points.cols(); }
};

enum class OptStatus { Feasible, Infeasible, Optimal };
enum class LpRoute { NormalEquations, Simplex };

struct OptResult {
  OptStatus status = OptStatus::Infeasible;
  Vector alpha;
  // QP: eta^(i), with eta_i the multiplier of the sum constraint.
  // LP: unused (see lp_dual_check for y and s).
  Vector multipliers;
  // QP: 1/2 dist^2. LP: phase-I optimum (0 for the normal-equation route
  // when feasible, otherwise the residual norm).
  double objective = 0.0;
  LpRoute route = LpRoute::Simplex;
  int iterations = 0;
};

OptResult lp_feasible(const LPFeasibilityProblem& p, const Tolerances& tol = default_tolerances());

// Checks the primal-dual optimality system of the feasibility LP: primal
// equalities, sign rows, (x~^i)^T y = 0, (x~^j)^T y + s_j = 0, s_j >= 0,
// alpha_j s_j = 0. Rows are numbered: sign rows [0, l), primal equality rows
// [l, l + rows), dual rows after that.
struct DualCheck {
  bool ok = false;
  int violated_row = -1;
  std::string violated;
  Vector y;
  Vector s;
  double max_residual = 0.0;
};

DualCheck lp_dual_check(const LPFeasibilityProblem& p, const OptResult& primal,
                        const std::optional<Vector>& y = std::nullopt,
                        const Tolerances& tol = default_tolerances());

// Primal active-set method for
//   min 1/2 ||design * w - target||^2  s.t.  eq * w = eq_rhs,  w_j >= 0 (j in nonneg)
// started from a feasible `start`. Subproblem KKT systems are solved in the
// minimum-norm sense, so rank-deficient designs are fine.
struct LeastSquaresProblem {
  Matrix design;
  Vector target;
  Matrix eq;
  Vector eq_rhs;
  std::vector<bool> nonneg;
};

struct LeastSquaresResult {
  Vector w;
  Vector eq_multipliers;     // nu
  Vector bound_multipliers;  // lambda_j for w_j >= 0, zero off the working set
  double objective = 0.0;
  int changes = 0;
};

LeastSquaresResult solve_constrained_lsq(const LeastSquaresProblem& p, const Vector& start,
                                         int max_changes,
                                         const Tolerances& tol = default_tolerances());

// Active-set solve of the nearest-combination QP. IterationLimit past
// 10 * l active-set changes.
OptResult qp_nearest(const QPProblem& p, const Tolerances& tol = default_tolerances());

// (stationarity, equality, sign, complementarity)
//   stationarity    ||X^T (X alpha - f) + eta_i e - eta(^i 0)||_2
//   equality        |e^T alpha|          (0 for ray problems)
//   sign            max(0, -alpha_j, -eta_j) over j != i
//   complementarity |sum_{j != i} eta_j alpha_j|
Eigen::Vector4d kkt_residuals(const QPProblem& p, const OptResult& r);

// Euclidean projections onto polyhedral sets, by the same active-set solver.
struct Projection {
  Vector point;
  double distance = 0.0;
};

Projection project_convex_hull(const Matrix& points, const Vector& z,
                               const Tolerances& tol = default_tolerances());
Projection project_conic_hull(const Matrix& rays, const Vector& z,
                              const Tolerances& tol = default_tolerances());
// EmptySet if {x : G x <= b} is empty.
Projection project_polyhedron(const Matrix& g, const Vector& b, const Vector& z,
                              const Tolerances& tol = default_tolerances());

// Some x with G x <= b, or nullopt.
std::optional<Vector> feasible_point(const Matrix& g, const Vector& b,
                                     const Tolerances& tol = default_tolerances());

}  // namespace nagumo

#endif  // NAGUMO_SOLVERS_HPP
