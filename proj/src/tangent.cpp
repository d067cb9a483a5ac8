#include "nagumo/tangent.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nagumo/error.hpp"
#include "nagumo/lp.hpp"

namespace nagumo {

std::string_view to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::Halfspaces: return "halfspaces";
    case ConeKind::Generated: return "generated";
    case ConeKind::QuadraticHalfspace: return "quadratic-halfspace";
    case ConeKind::FullSpace: return "full-space";
    case ConeKind::Lorenz: return "lorenz";
  }
  return "unknown";
}

TangentCone TangentCone::full_space(Eigen::Index n) {
  TangentCone t;
  t.kind = ConeKind::FullSpace;
  t.dim = n;
  return t;
}

namespace {

void require_dim(Eigen::Index expected, const Vector& x, const char* what) {
  if (x.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": point has dimension " + std::to_string(x.size()) +
                    ", set has " + std::to_string(expected));
  }
}

void check_index(int i, Eigen::Index size, const char* what) {
  if (i < 0 || i >= size) {
    throw Error(ErrorCode::IndexOutOfRange, std::string(what) + " index " + std::to_string(i) +
                                                " outside [0, " + std::to_string(size) + ")");
  }
}

TangentCone generated(Matrix gens, int free_generator) {
  TangentCone t;
  t.kind = ConeKind::Generated;
  t.dim = gens.rows();
  t.generators = std::move(gens);
  t.free_generator = free_generator;
  return t;
}

// Smallest L1 residual of  generators c = y  over admissible c.
double generated_residual(const TangentCone& t, const Vector& y, const Tolerances& tol) {
  const Eigen::Index l = t.generators.cols();
  const bool has_free = t.free_generator >= 0;
  LinearProgram lp;
  lp.eq = Matrix(t.dim, l + (has_free ? 1 : 0));
  lp.eq.leftCols(l) = t.generators;
  if (has_free) lp.eq.col(l) = -t.generators.col(t.free_generator);
  lp.eq_rhs = y;
  return solve_lp(lp, tol).infeasibility;
}

}  // namespace

TangentCone tangent_h(const HPolyhedron& p, const Vector& x, const Tolerances& tol) {
  require_dim(p.dim(), x, "tangent_h");
  if (membership(ConvexSet(p), x, tol) == Membership::Outside) {
    throw Error(ErrorCode::NotMember, "tangent_h: point lies outside the polyhedron");
  }
  const std::vector<int> active = active_constraints(p, x, tol.boundary_band);
  if (active.empty()) return TangentCone::full_space(p.dim());
  TangentCone t;
  t.kind = ConeKind::Halfspaces;
  t.dim = p.dim();
  t.normals.resize(static_cast<Eigen::Index>(active.size()), p.dim());
  for (std::size_t k = 0; k < active.size(); ++k) {
    t.normals.row(static_cast<Eigen::Index>(k)) = p.normals().row(active[k]);
  }
  return t;
}

TangentCone tangent_polytope(const VPolytope& p, int i) {
  check_index(i, p.size(), "vertex");
  Matrix gens(p.dim(), p.size() - 1);
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j < p.size(); ++j) {
    if (j != i) gens.col(c++) = p.vertices().col(j) - p.vertices().col(i);
  }
  return generated(std::move(gens), -1);
}

TangentCone tangent_vcone(const VCone& c, int i) {
  check_index(i, c.size(), "ray");
  return generated(c.rays(), i);
}

TangentCone tangent_quadratic(const Ellipsoid& e, const Vector& x, const Tolerances& tol) {
  require_dim(e.dim(), x, "tangent_quadratic");
  if (membership(ConvexSet(e), x, tol) != Membership::Boundary) {
    throw Error(ErrorCode::NotMember, "tangent_quadratic: point is not on the ellipsoid surface");
  }
  TangentCone t;
  t.kind = ConeKind::QuadraticHalfspace;
  t.dim = e.dim();
  t.q_normal = e.shape() * x;
  return t;
}

TangentCone tangent_quadratic(const LorenzCone& c, const Vector& x, const Tolerances& tol) {
  require_dim(c.dim(), x, "tangent_quadratic");
  if (membership(ConvexSet(c), x, tol) != Membership::Boundary) {
    throw Error(ErrorCode::NotMember, "tangent_quadratic: point is not on the cone surface");
  }
  if (x.norm() <= tol.boundary_band) {
    throw Error(ErrorCode::ApexPoint, "tangent_quadratic: the apex has no unique normal");
  }
  TangentCone t;
  t.kind = ConeKind::QuadraticHalfspace;
  t.dim = c.dim();
  t.q_normal = c.shape() * x;
  return t;
}

TangentCone tangent_at(const ConvexSet& s, const Vector& x, const Tolerances& tol) {
  require_dim(s.dim(), x, "tangent_at");
  const Membership m = membership(s, x, tol);
  if (m == Membership::Outside) {
    throw Error(ErrorCode::NotMember, "tangent_at: point lies outside the set");
  }
  if (m == Membership::Inside) return TangentCone::full_space(s.dim());

  switch (s.kind()) {
    case SetKind::HPolyhedron:
      return tangent_h(s.as<HPolyhedron>(), x, tol);
    case SetKind::VPolytope: {
      const auto& p = s.as<VPolytope>();
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        if ((p.vertices().col(j) - x).norm() <= tol.distinct_vertices * (1.0 + x.norm())) {
          return tangent_polytope(p, static_cast<int>(j));
        }
      }
      return generated(p.vertices().colwise() - x, -1);
    }
    case SetKind::VCone: {
      const auto& c = s.as<VCone>();
      const double norm = x.norm();
      if (norm <= tol.min_ray_norm) return generated(c.rays(), -1);
      const Vector unit = x / norm;
      for (Eigen::Index j = 0; j < c.size(); ++j) {
        if ((c.unit_rays().col(j) - unit).norm() <= tol.distinct_vertices) {
          return tangent_vcone(c, static_cast<int>(j));
        }
      }
      Matrix gens(c.dim(), c.size() + 1);
      gens << c.rays(), unit;
      return generated(std::move(gens), static_cast<int>(c.size()));
    }
    case SetKind::Ellipsoid:
      return tangent_quadratic(s.as<Ellipsoid>(), x, tol);
    case SetKind::LorenzCone: {
      const auto& c = s.as<LorenzCone>();
      if (x.norm() <= tol.boundary_band) {
        TangentCone t;
        t.kind = ConeKind::Lorenz;
        t.dim = c.dim();
        t.lorenz_shape = c.shape();
        t.lorenz_axis = c.axis();
        return t;
      }
      return tangent_quadratic(c, x, tol);
    }
  }
  return TangentCone::full_space(s.dim());
}

bool cone_contains(const TangentCone& t, const Vector& y, const Tolerances& tol) {
  return cone_contains(t, y, tol.cone_membership);
}

bool cone_contains(const TangentCone& t, const Vector& y, double tol) {
  if (y.size() != t.dim) {
    throw Error(ErrorCode::DimensionMismatch, "cone_contains: vector dimension");
  }
  const double ynorm = y.norm();
  switch (t.kind) {
    case ConeKind::FullSpace:
      return true;
    case ConeKind::Halfspaces:
      for (Eigen::Index i = 0; i < t.normals.rows(); ++i) {
        if (t.normals.row(i).dot(y) > tol * (1.0 + t.normals.row(i).norm() * ynorm)) {
          return false;
        }
      }
      return true;
    case ConeKind::QuadraticHalfspace:
      return t.q_normal.dot(y) <= tol * (1.0 + t.q_normal.norm() * ynorm);
    case ConeKind::Generated: {
      if (ynorm == 0.0) return true;
      Tolerances loose = default_tolerances();
      loose.lp_feasibility = tol;
      return generated_residual(t, y / ynorm, loose) <= tol;
    }
    case ConeKind::Lorenz: {
      if (ynorm == 0.0) return true;
      const LorenzCone c(t.lorenz_shape, t.lorenz_axis);
      return membership(ConvexSet(c), y / ynorm, tol) != Membership::Outside;
    }
  }
  return false;
}

double cone_violation(const TangentCone& t, const Vector& y, const Tolerances& tol) {
  if (y.size() != t.dim) {
    throw Error(ErrorCode::DimensionMismatch, "cone_violation: vector dimension");
  }
  switch (t.kind) {
    case ConeKind::FullSpace:
      return -std::numeric_limits<double>::infinity();
    case ConeKind::Halfspaces:
      return (t.normals * y).maxCoeff();
    case ConeKind::QuadraticHalfspace:
      return t.q_normal.dot(y);
    case ConeKind::Generated:
      return generated_residual(t, y, tol);
    case ConeKind::Lorenz: {
      const double ynorm = y.norm();
      if (ynorm == 0.0) return 0.0;
      const double q = y.dot(t.lorenz_shape * y) / ynorm;
      const double side = y.dot(t.lorenz_shape * t.lorenz_axis);
      return std::max(q, side);
    }
  }
  return 0.0;
}

}  // namespace nagumo
