#ifndef NAGUMO_NUMERICS_HPP
#define NAGUMO_NUMERICS_HPP

#include <functional>

#include <Eigen/Dense>

#include "nagumo/config.hpp"

namespace nagumo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Symmetric eigendecomposition. `values` sorted descending; column k of
// `vectors` is the unit eigenvector for values(k).
struct EigenResult {
  Vector values;
  Matrix vectors;
};

struct GeneralizedEigenPair {
  double value = 0.0;
  Vector vector;  // normalized so that v^T Q v = 1
};

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
};

bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

// Throws InvalidArgument naming `what` if any entry is NaN or infinite.
void require_finite(const Matrix& m, const char* what);
void require_finite(const Vector& v, const char* what);

// Gaussian elimination with partial pivoting; SingularMatrix when a pivot
// falls below tol.singular_pivot.
Vector solve_linear(const Matrix& a, const Vector& b,
                    const Tolerances& tol = default_tolerances());

// Cyclic Jacobi. The input is symmetrized as (M + M^T)/2 after checking
// ||M - M^T||_inf <= tol.symmetry * (1 + ||M||_inf).
EigenResult sym_eig(const Matrix& m, const Tolerances& tol = default_tolerances());

// Lower-triangular L with L L^T = q. NotPositiveDefinite when a pivot
// drops below tol.spd_pivot.
Matrix cholesky_lower(const Matrix& q, const Tolerances& tol = default_tolerances());

// Largest lambda with M v = lambda Q v, Q positive definite, by reduction
// to L^{-1} M L^{-T}.
GeneralizedEigenPair gen_eig_max_pair(const Matrix& m, const Matrix& q,
                                      const Tolerances& tol = default_tolerances());
double gen_eig_max(const Matrix& m, const Matrix& q,
                   const Tolerances& tol = default_tolerances());

double lambda_max(const Matrix& m, const Tolerances& tol = default_tolerances());

// Golden-section search on [lo, hi]. Returns a point within `xtol` of a
// minimizer when f is convex on the bracket.
ScalarMinimum minimize_scalar_convex(const std::function<double(double)>& f, double lo,
                                     double hi, double xtol);

// Largest absolute row sum.
double gershgorin_radius(const Matrix& m);

// Symmetric eigen-bracket for minimizing lambda_max(M - eta Q) over eta.
double eta_bracket(const Matrix& m, const Matrix& q,
                   const Tolerances& tol = default_tolerances());

}  // namespace nagumo

#endif  // NAGUMO_NUMERICS_HPP
