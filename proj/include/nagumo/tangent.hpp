#ifndef NAGUMO_TANGENT_HPP
#define NAGUMO_TANGENT_HPP

#include <string_view>

#include "nagumo/config.hpp"
#include "nagumo/numerics.hpp"
#include "nagumo/sets.hpp"

namespace nagumo {

// Halfspaces:          {y : g^T y <= 0 for every row g of `normals`}
// Generated:           {sum c_j d_j : c_j >= 0 except c_free}, d_j the columns of `generators`
// QuadraticHalfspace:  {y : q_normal^T y <= 0}
// FullSpace:           R^n (interior base point)
// Lorenz:              the Lorenz cone itself (tangent cone at its apex)
enum class ConeKind { Halfspaces, Generated, QuadraticHalfspace, FullSpace, Lorenz };

std::string_view to_string(ConeKind kind);

struct TangentCone {
  ConeKind kind = ConeKind::FullSpace;
  Eigen::Index dim = 0;
  Matrix normals;
  Matrix generators;
  int free_generator = -1;
  Vector q_normal;
  Matrix lorenz_shape;
  Vector lorenz_axis;

  static TangentCone full_space(Eigen::Index n);
};

// Active normals of P at x. NotMember if x lies outside P.
TangentCone tangent_h(const HPolyhedron& p, const Vector& x,
                      const Tolerances& tol = default_tolerances());

// Generators x^j - x^i, j != i.
TangentCone tangent_polytope(const VPolytope& p, int i);

// Free generator x^i plus nonnegative x^j, j != i.
TangentCone tangent_vcone(const VCone& c, int i);

// {y : y^T Q x <= 0}. NotMember off the boundary; ApexPoint at the Lorenz apex.
TangentCone tangent_quadratic(const Ellipsoid& e, const Vector& x,
                              const Tolerances& tol = default_tolerances());
TangentCone tangent_quadratic(const LorenzCone& c, const Vector& x,
                              const Tolerances& tol = default_tolerances());

// Tangent cone of any set at any member point. For V-forms a point that
// is not a generator gets the cone spanned by x^j - x (polytope) or by the
// rays plus a free x (cone). NotMember if x is outside.
TangentCone tangent_at(const ConvexSet& s, const Vector& x,
                       const Tolerances& tol = default_tolerances());

// Halfspace kinds: g^T y <= tol * (1 + ||g|| ||y||). Generated: the phase-I
// residual of the coefficient LP for y / ||y|| is at most tol.
bool cone_contains(const TangentCone& t, const Vector& y, double tol);
bool cone_contains(const TangentCone& t, const Vector& y,
                   const Tolerances& tol = default_tolerances());

// How far y is from satisfying the cone: max g^T y for halfspace kinds,
// the L1 residual of the coefficient LP for generated ones. <= 0 (or 0)
// inside the cone, -inf for FullSpace.
double cone_violation(const TangentCone& t, const Vector& y,
                      const Tolerances& tol = default_tolerances());

}  // namespace nagumo

#endif  // NAGUMO_TANGENT_HPP
