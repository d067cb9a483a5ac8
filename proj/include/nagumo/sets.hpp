#ifndef NAGUMO_SETS_HPP
#define NAGUMO_SETS_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "nagumo/config.hpp"
#include "nagumo/numerics.hpp"

namespace nagumo {

// {x : G x <= b}. With b = 0 this is a polyhedral cone.
class HPolyhedron {
 public:
  HPolyhedron(Matrix g, Vector b);

  const Matrix& normals() const { return g_; }
  const Vector& offsets() const { return b_; }
  Eigen::Index dim() const { return g_.cols(); }
  Eigen::Index num_constraints() const { return g_.rows(); }
  bool is_cone() const;

 private:
  Matrix g_;
  Vector b_;
};

// Convex hull of the columns of `vertices`.
class VPolytope {
 public:
  explicit VPolytope(Matrix vertices, const Tolerances& tol = default_tolerances());
  explicit VPolytope(const std::vector<Vector>& vertices,
                     const Tolerances& tol = default_tolerances());

  const Matrix& vertices() const { return v_; }
  Vector vertex(Eigen::Index i) const { return v_.col(i); }
  Eigen::Index dim() const { return v_.rows(); }
  Eigen::Index size() const { return v_.cols(); }
  bool full_dimensional() const { return full_dim_; }

 private:
  Matrix v_;
  bool full_dim_ = false;
};

// Conic hull of the columns of `rays`.
class VCone {
 public:
  explicit VCone(Matrix rays, const Tolerances& tol = default_tolerances());
  explicit VCone(const std::vector<Vector>& rays, const Tolerances& tol = default_tolerances());

  const Matrix& rays() const { return r_; }
  const Matrix& unit_rays() const { return unit_; }
  Vector ray(Eigen::Index i) const { return r_.col(i); }
  Eigen::Index dim() const { return r_.rows(); }
  Eigen::Index size() const { return r_.cols(); }
  bool full_dimensional() const { return full_dim_; }

 private:
  Matrix r_;
  Matrix unit_;
  bool full_dim_ = false;
};

// {x : x^T Q x <= 1}, Q symmetric positive definite.
class Ellipsoid {
 public:
  explicit Ellipsoid(Matrix q, const Tolerances& tol = default_tolerances());

  const Matrix& shape() const { return q_; }
  const EigenResult& eigen() const { return eig_; }
  Eigen::Index dim() const { return q_.rows(); }

 private:
  Matrix q_;
  EigenResult eig_;
};

// {x : x^T Q x <= 0, x^T Q u <= 0}, Q symmetric with inertia {n-1, 0, 1}
// and u the unit eigenvector of the negative eigenvalue. Since that
// eigenvalue is negative, x^T Q u <= 0 selects the nappe containing u.
//
// `axis_hint` picks the nappe: u is flipped so that u^T hint > 0. Without a
// hint the largest-magnitude component of u is made positive.
class LorenzCone {
 public:
  explicit LorenzCone(Matrix q, std::optional<Vector> axis_hint = std::nullopt,
                      const Tolerances& tol = default_tolerances());

  const Matrix& shape() const { return q_; }
  const Vector& axis() const { return axis_; }
  const EigenResult& eigen() const { return eig_; }
  Eigen::Index dim() const { return q_.rows(); }

 private:
  Matrix q_;
  Vector axis_;
  EigenResult eig_;
};

enum class SetKind { HPolyhedron, VPolytope, VCone, Ellipsoid, LorenzCone };

std::string_view to_string(SetKind kind);

class ConvexSet {
 public:
  using Variant = std::variant<HPolyhedron, VPolytope, VCone, Ellipsoid, LorenzCone>;

  ConvexSet(HPolyhedron s) : set_(std::move(s)) {}
  ConvexSet(VPolytope s) : set_(std::move(s)) {}
  ConvexSet(VCone s) : set_(std::move(s)) {}
  ConvexSet(Ellipsoid s) : set_(std::move(s)) {}
  ConvexSet(LorenzCone s) : set_(std::move(s)) {}

  // The nonnegative orthant as {x : -x <= 0}.
  static ConvexSet orthant(Eigen::Index n);
  // The nonnegative orthant as cone{e^1, ..., e^n}.
  static ConvexSet orthant_rays(Eigen::Index n);

  SetKind kind() const { return static_cast<SetKind>(set_.index()); }
  Eigen::Index dim() const;
  bool is_orthant() const { return orthant_; }

  const Variant& variant() const { return set_; }
  template <class T>
  const T& as() const { return std::get<T>(set_); }
  template <class T>
  const T* get_if() const { return std::get_if<T>(&set_); }

 private:
  Variant set_;
  bool orthant_ = false;
};

enum class Membership { Inside, Boundary, Outside };

std::string_view to_string(Membership m);

enum class BoundaryTag { Constraints, Vertex, Ray, Face, QuadraticSurface, Apex };

std::string_view to_string(BoundaryTag tag);

// `active_set` holds constraint rows (Constraints), the vertex or ray index
// (Vertex, Ray), or the generators carrying the point (Face).
struct BoundaryPoint {
  Vector point;
  BoundaryTag tag = BoundaryTag::Constraints;
  std::vector<int> active_set;
};

// `band` is the relative boundary tolerance on each defining inequality.
// V-forms are decided by an LP that maximizes the smallest combination
// weight: infeasible means Outside, a zero optimum means Boundary.
Membership membership(const ConvexSet& s, const Vector& x,
                      const Tolerances& tol = default_tolerances());
Membership membership(const ConvexSet& s, const Vector& x, double band,
                      const Tolerances& tol = default_tolerances());

// Rows i with |g_i^T x - b_i| <= band * (1 + |b_i|).
std::vector<int> active_constraints(const HPolyhedron& p, const Vector& x,
                                    double band = default_tolerances().boundary_band);

// Deterministic in `seed`. See the README for the per-family scheme.
std::vector<BoundaryPoint> sample_boundary(const ConvexSet& s, int count, std::uint64_t seed,
                                           const Tolerances& tol = default_tolerances());

// A point of the relative interior (the origin for ellipsoids, the axis for
// Lorenz cones, a Chebyshev center for H-polyhedra).
Vector interior_point(const ConvexSet& s, const Tolerances& tol = default_tolerances());

}  // namespace nagumo

#endif  // NAGUMO_SETS_HPP
