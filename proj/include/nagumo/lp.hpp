#ifndef NAGUMO_LP_HPP
#define NAGUMO_LP_HPP

#include "nagumo/config.hpp"
#include "nagumo/numerics.hpp"

namespace nagumo {

// minimize cost^T z  s.t.  eq z = eq_rhs,  ub z <= ub_rhs,  z >= 0.
// Free variables are the caller's job (split as z+ - z-). An empty `cost`
// means a pure feasibility problem.
struct LinearProgram {
  Vector cost;
  Matrix eq;
  Vector eq_rhs;
  Matrix ub;
  Vector ub_rhs;

  Eigen::Index num_vars() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector z;
  double objective = 0.0;
  // Phase-I optimum: the L1 norm of the constraint violation the
  // artificials could not remove. Reported for every status.
  double infeasibility = 0.0;
  int iterations = 0;
};

// Dense-tableau two-phase simplex with Bland's rule, so runs are
// deterministic and cannot cycle. NumericalFailure past the pivot budget.
LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol = default_tolerances());

}  // namespace nagumo

#endif  // NAGUMO_LP_HPP
