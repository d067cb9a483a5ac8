#include "nagumo/sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "nagumo/error.hpp"
#include "nagumo/lp.hpp"
#include "nagumo/solvers.hpp"

namespace nagumo {

namespace {

bool spans_space(const Matrix& directions) {
  const Eigen::Index n = directions.rows();
  if (n == 0) return true;
  if (directions.cols() < n) return false;
  const EigenResult eig = sym_eig(directions * directions.transpose());
  return eig.values(n - 1) > 1e-10 * std::max(1.0, eig.values(0));
}

Matrix stack_columns(const std::vector<Vector>& cols, const char* what) {
  if (cols.empty()) throw Error(ErrorCode::InvalidArgument, std::string(what) + ": empty list");
  const Eigen::Index n = cols.front().size();
  Matrix m(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": ragged dimensions");
    }
    m.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return m;
}

Vector random_direction(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector u(n);
  do {
    for (Eigen::Index k = 0; k < n; ++k) u(k) = normal(rng);
  } while (u.norm() < 1e-12);
  return u / u.norm();
}

// Uniform weights on the simplex.
Vector random_weights(std::mt19937_64& rng, Eigen::Index n) {
  std::exponential_distribution<double> expo(1.0);
  Vector w(n);
  for (Eigen::Index k = 0; k < n; ++k) w(k) = expo(rng) + 1e-12;
  return w / w.sum();
}

std::vector<int> support(const Vector& theta, double eps = 1e-12) {
  std::vector<int> out;
  for (Eigen::Index j = 0; j < theta.size(); ++j) {
    if (theta(j) > eps) out.push_back(static_cast<int>(j));
  }
  return out;
}

// max tau  s.t.  gens theta = x, (sum theta = 1), theta_j >= tau, tau <= 1.
// Returns the LP solution; z = (theta, tau).
LpSolution max_min_weight(const Matrix& gens, const Vector& x, bool convex,
                          const Tolerances& tol) {
  const Eigen::Index n = gens.rows();
  const Eigen::Index l = gens.cols();
  LinearProgram lp;
  lp.cost = Vector::Zero(l + 1);
  lp.cost(l) = -1.0;
  lp.eq = Matrix::Zero(n + (convex ? 1 : 0), l + 1);
  lp.eq.topLeftCorner(n, l) = gens;
  lp.eq_rhs = Vector::Zero(lp.eq.rows());
  lp.eq_rhs.head(n) = x;
  if (convex) {
    lp.eq.row(n).head(l).setOnes();
    lp.eq_rhs(n) = 1.0;
  }
  lp.ub = Matrix::Zero(l + 1, l + 1);
  for (Eigen::Index j = 0; j < l; ++j) {
    lp.ub(j, j) = -1.0;
    lp.ub(j, l) = 1.0;
  }
  lp.ub(l, l) = 1.0;
  lp.ub_rhs = Vector::Zero(l + 1);
  lp.ub_rhs(l) = 1.0;
  return solve_lp(lp, tol);
}

Membership classify_combination(const Matrix& gens, const Vector& x, bool convex, bool full_dim,
                                double band, const Tolerances& tol) {
  const LpSolution sol = max_min_weight(gens, x, convex, tol);
  if (sol.status == LpStatus::Infeasible) {
    return sol.infeasibility <= band * (1.0 + x.cwiseAbs().maxCoeff()) ? Membership::Boundary
                                                                       : Membership::Outside;
  }
  const double tau = sol.z(gens.cols());
  if (!full_dim || tau <= band) return Membership::Boundary;
  return Membership::Inside;
}

double max_abs_eigenvalue(const EigenResult& e) { return e.values.cwiseAbs().maxCoeff(); }

}  // namespace

HPolyhedron::HPolyhedron(Matrix g, Vector b) : g_(std::move(g)), b_(std::move(b)) {
  if (g_.rows() != b_.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "H-polyhedron: G has " + std::to_string(g_.rows()) + " rows, b has " +
                    std::to_string(b_.size()) + " entries");
  }
  if (g_.cols() == 0) throw Error(ErrorCode::InvalidArgument, "H-polyhedron: dimension 0");
  require_finite(g_, "G");
  require_finite(b_, "b");
}

bool HPolyhedron::is_cone() const { return b_.size() == 0 || b_.cwiseAbs().maxCoeff() == 0.0; }

VPolytope::VPolytope(Matrix vertices, const Tolerances& tol) : v_(std::move(vertices)) {
  if (v_.cols() == 0 || v_.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "V-polytope needs at least one vertex");
  }
  require_finite(v_, "vertices");
  for (Eigen::Index i = 0; i < v_.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < v_.cols(); ++j) {
      if ((v_.col(i) - v_.col(j)).norm() <= tol.distinct_vertices) {
        throw Error(ErrorCode::InvalidArgument, "vertices " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " coincide");
      }
    }
  }
  full_dim_ = spans_space(v_.rightCols(v_.cols() - 1).colwise() - v_.col(0));
}

VPolytope::VPolytope(const std::vector<Vector>& vertices, const Tolerances& tol)
    : VPolytope(stack_columns(vertices, "vertices"), tol) {}

VCone::VCone(Matrix rays, const Tolerances& tol) : r_(std::move(rays)) {
  if (r_.cols() == 0 || r_.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "V-cone needs at least one ray");
  }
  require_finite(r_, "rays");
  unit_ = r_;
  for (Eigen::Index j = 0; j < r_.cols(); ++j) {
    const double norm = r_.col(j).norm();
    if (norm < tol.min_ray_norm) {
      throw Error(ErrorCode::InvalidArgument, "ray " + std::to_string(j) + " is zero");
    }
    unit_.col(j) /= norm;
  }
  full_dim_ = spans_space(unit_);
}

VCone::VCone(const std::vector<Vector>& rays, const Tolerances& tol)
    : VCone(stack_columns(rays, "rays"), tol) {}

Ellipsoid::Ellipsoid(Matrix q, const Tolerances& tol) : q_(std::move(q)) {
  if (q_.rows() == 0) throw Error(ErrorCode::InvalidArgument, "ellipsoid: dimension 0");
  eig_ = sym_eig(q_, tol);
  q_ = 0.5 * (q_ + q_.transpose()).eval();
  if (!(eig_.values(q_.rows() - 1) > tol.inertia_zero)) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "ellipsoid shape has eigenvalue " + std::to_string(eig_.values(q_.rows() - 1)));
  }
}

LorenzCone::LorenzCone(Matrix q, std::optional<Vector> axis_hint, const Tolerances& tol)
    : q_(std::move(q)) {
  if (q_.rows() == 0) throw Error(ErrorCode::InvalidArgument, "Lorenz cone: dimension 0");
  eig_ = sym_eig(q_, tol);
  q_ = 0.5 * (q_ + q_.transpose()).eval();
  const Eigen::Index n = q_.rows();
  int negative = 0;
  int zero = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    if (eig_.values(k) < -tol.inertia_zero) {
      ++negative;
    } else if (eig_.values(k) <= tol.inertia_zero) {
      ++zero;
    }
  }
  if (negative != 1 || zero != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "Lorenz cone needs inertia {n-1, 0, 1}, got {" +
                    std::to_string(n - negative - zero) + ", " + std::to_string(zero) + ", " +
                    std::to_string(negative) + "}");
  }
  axis_ = eig_.vectors.col(n - 1);
  if (axis_hint) {
    if (axis_hint->size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "Lorenz axis hint dimension");
    }
    const double d = axis_.dot(*axis_hint);
    if (std::abs(d) < 1e-12 * (1.0 + axis_hint->norm())) {
      throw Error(ErrorCode::InvalidArgument, "Lorenz axis hint is orthogonal to the axis");
    }
    if (d < 0.0) axis_ = -axis_;
  } else {
    Eigen::Index k = 0;
    axis_.cwiseAbs().maxCoeff(&k);
    if (axis_(k) < 0.0) axis_ = -axis_;
  }
  eig_.vectors.col(n - 1) = axis_;
}

std::string_view to_string(SetKind kind) {
  switch (kind) {
    case SetKind::HPolyhedron: return "hpolyhedron";
    case SetKind::VPolytope: return "vpolytope";
    case SetKind::VCone: return "vcone";
    case SetKind::Ellipsoid: return "ellipsoid";
    case SetKind::LorenzCone: return "lorenz";
  }
  return "unknown";
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Inside: return "Inside";
    case Membership::Boundary: return "Boundary";
    case Membership::Outside: return "Outside";
  }
  return "unknown";
}

std::string_view to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::Constraints: return "constraints";
    case BoundaryTag::Vertex: return "vertex";
    case BoundaryTag::Ray: return "ray";
    case BoundaryTag::Face: return "face";
    case BoundaryTag::QuadraticSurface: return "quadratic-surface";
    case BoundaryTag::Apex: return "apex";
  }
  return "unknown";
}

ConvexSet ConvexSet::orthant(Eigen::Index n) {
  ConvexSet s(HPolyhedron(-Matrix::Identity(n, n), Vector::Zero(n)));
  s.orthant_ = true;
  return s;
}

ConvexSet ConvexSet::orthant_rays(Eigen::Index n) {
  ConvexSet s(VCone(Matrix::Identity(n, n)));
  s.orthant_ = true;
  return s;
}

Eigen::Index ConvexSet::dim() const {
  return std::visit([](const auto& s) { return s.dim(); }, set_);
}

std::vector<int> active_constraints(const HPolyhedron& p, const Vector& x, double band) {
  if (x.size() != p.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "active_constraints: point dimension");
  }
  std::vector<int> out;
  const Vector r = p.normals() * x - p.offsets();
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (std::abs(r(i)) <= band * (1.0 + std::abs(p.offsets()(i)))) {
      out.push_back(static_cast<int>(i));
    }
  }
  return out;
}

Membership membership(const ConvexSet& s, const Vector& x, const Tolerances& tol) {
  return membership(s, x, tol.boundary_band, tol);
}

Membership membership(const ConvexSet& s, const Vector& x, double band, const Tolerances& tol) {
  if (x.size() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "membership: point has dimension " +
                                                  std::to_string(x.size()) + ", set has " +
                                                  std::to_string(s.dim()));
  }
  require_finite(x, "point");
  switch (s.kind()) {
    case SetKind::HPolyhedron: {
      const auto& p = s.as<HPolyhedron>();
      const Vector r = p.normals() * x - p.offsets();
      bool boundary = false;
      for (Eigen::Index i = 0; i < r.size(); ++i) {
        const double width = band * (1.0 + std::abs(p.offsets()(i)));
        if (r(i) > width) return Membership::Outside;
        if (r(i) >= -width) boundary = true;
      }
      return boundary ? Membership::Boundary : Membership::Inside;
    }
    case SetKind::VPolytope: {
      const auto& p = s.as<VPolytope>();
      return classify_combination(p.vertices(), x, true, p.full_dimensional(), band, tol);
    }
    case SetKind::VCone: {
      const auto& c = s.as<VCone>();
      const double norm = x.norm();
      if (norm == 0.0) return Membership::Boundary;
      return classify_combination(c.unit_rays(), x / norm, false, c.full_dimensional(), band,
                                  tol);
    }
    case SetKind::Ellipsoid: {
      const auto& e = s.as<Ellipsoid>();
      const double q = x.dot(e.shape() * x) - 1.0;
      if (q > band) return Membership::Outside;
      return q >= -band ? Membership::Boundary : Membership::Inside;
    }
    case SetKind::LorenzCone: {
      const auto& c = s.as<LorenzCone>();
      const double lmax = max_abs_eigenvalue(c.eigen());
      const double xn = x.norm();
      const double q = x.dot(c.shape() * x);
      const double side = x.dot(c.shape() * c.axis());
      const double q_width = band * (1.0 + lmax * xn * xn);
      const double side_width = band * (1.0 + lmax * xn);
      if (q > q_width || side > side_width) return Membership::Outside;
      if (q >= -q_width || side >= -side_width) return Membership::Boundary;
      return Membership::Inside;
    }
  }
  return Membership::Outside;
}

Vector interior_point(const ConvexSet& s, const Tolerances& tol) {
  switch (s.kind()) {
    case SetKind::HPolyhedron: {
      const auto& p = s.as<HPolyhedron>();
      const Eigen::Index n = p.dim();
      const Eigen::Index m = p.num_constraints();
      const auto x0 = feasible_point(p.normals(), p.offsets(), tol);
      if (!x0) throw Error(ErrorCode::EmptySet, "H-polyhedron is empty");
      if (m == 0) return *x0;
      // Chebyshev ball, radius capped at 1, inside a box around x0.
      const double reach =
          1.0 + 2.0 * p.offsets().cwiseAbs().maxCoeff() + x0->cwiseAbs().maxCoeff();
      const Matrix& g = p.normals();
      LinearProgram lp;
      lp.cost = Vector::Zero(2 * n + 1);
      lp.cost(2 * n) = -1.0;
      lp.ub = Matrix::Zero(m + 2 * n + 1, 2 * n + 1);
      lp.ub_rhs = Vector::Zero(m + 2 * n + 1);
      lp.ub.topLeftCorner(m, n) = g;
      lp.ub.block(0, n, m, n) = -g;
      lp.ub.block(0, 2 * n, m, 1) = g.rowwise().norm();
      lp.ub_rhs.head(m) = p.offsets() - g * *x0;
      for (Eigen::Index k = 0; k < n; ++k) {
        lp.ub(m + k, k) = 1.0;
        lp.ub(m + k, n + k) = -1.0;
        lp.ub(m + n + k, k) = -1.0;
        lp.ub(m + n + k, n + k) = 1.0;
        lp.ub_rhs(m + k) = reach;
        lp.ub_rhs(m + n + k) = reach;
      }
      lp.ub(m + 2 * n, 2 * n) = 1.0;
      lp.ub_rhs(m + 2 * n) = 1.0;
      const LpSolution sol = solve_lp(lp, tol);
      if (sol.status != LpStatus::Optimal) return *x0;
      return *x0 + sol.z.head(n) - sol.z.segment(n, n);
    }
    case SetKind::VPolytope:
      return s.as<VPolytope>().vertices().rowwise().mean();
    case SetKind::VCone:
      return s.as<VCone>().unit_rays().rowwise().mean();
    case SetKind::Ellipsoid:
      return Vector::Zero(s.dim());
    case SetKind::LorenzCone:
      return s.as<LorenzCone>().axis();
  }
  return Vector::Zero(s.dim());
}

namespace {

struct FacetPatch {
  int row = -1;
  Vector lo;
  Vector hi;
  std::vector<Vector> extremes;  // points of the facet found by the box LPs
};

// Bounding box and a few points of each nonempty facet, clipped to a box
// of half-width `reach` around `center`.
std::vector<FacetPatch> facet_patches(const HPolyhedron& p, const Vector& center, double reach,
                                      const Tolerances& tol) {
  const Eigen::Index n = p.dim();
  const Eigen::Index m = p.num_constraints();
  const Matrix& g = p.normals();
  const Vector shifted = p.offsets() - g * center;

  std::vector<FacetPatch> out;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (g.row(i).norm() == 0.0) continue;
    LinearProgram lp;
    lp.ub = Matrix::Zero(m + 2 * n, 2 * n);
    lp.ub_rhs = Vector::Zero(m + 2 * n);
    lp.ub.topLeftCorner(m, n) = g;
    lp.ub.topRightCorner(m, n) = -g;
    lp.ub_rhs.head(m) = shifted;
    for (Eigen::Index k = 0; k < n; ++k) {
      lp.ub(m + k, k) = 1.0;
      lp.ub(m + k, n + k) = -1.0;
      lp.ub(m + n + k, k) = -1.0;
      lp.ub(m + n + k, n + k) = 1.0;
      lp.ub_rhs(m + k) = reach;
      lp.ub_rhs(m + n + k) = reach;
    }
    lp.eq = Matrix::Zero(1, 2 * n);
    lp.eq.leftCols(n) = g.row(i);
    lp.eq.rightCols(n) = -g.row(i);
    lp.eq_rhs = Vector::Constant(1, shifted(i));

    FacetPatch patch;
    patch.row = static_cast<int>(i);
    patch.lo = Vector::Constant(n, std::numeric_limits<double>::infinity());
    patch.hi = -patch.lo;
    bool empty = false;
    for (Eigen::Index k = 0; k < n && !empty; ++k) {
      for (double sign : {1.0, -1.0}) {
        lp.cost = Vector::Zero(2 * n);
        lp.cost(k) = sign;
        lp.cost(n + k) = -sign;
        const LpSolution sol = solve_lp(lp, tol);
        if (sol.status != LpStatus::Optimal) {
          empty = true;
          break;
        }
        const Vector x = center + sol.z.head(n) - sol.z.tail(n);
        patch.lo = patch.lo.cwiseMin(x);
        patch.hi = patch.hi.cwiseMax(x);
        patch.extremes.push_back(x);
      }
    }
    if (!empty) out.push_back(std::move(patch));
  }
  return out;
}

std::vector<BoundaryPoint> sample_hpolyhedron(const HPolyhedron& p, int count,
                                              std::mt19937_64& rng, const Tolerances& tol) {
  const Vector center = interior_point(ConvexSet(p), tol);
  const double reach =
      1.0 + 2.0 * (p.num_constraints() > 0 ? p.offsets().cwiseAbs().maxCoeff() : 0.0);
  const auto patches = facet_patches(p, center, reach, tol);
  if (patches.empty()) throw Error(ErrorCode::EmptyBoundary, "no nonempty facet");

  const Matrix& g = p.normals();
  const Vector& b = p.offsets();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<BoundaryPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const FacetPatch& f = patches[static_cast<std::size_t>(k) % patches.size()];
    const Vector gi = g.row(f.row).transpose();
    std::optional<Vector> found;
    for (int attempt = 0; attempt < tol.facet_rejections && !found; ++attempt) {
      Vector y(p.dim());
      for (Eigen::Index c = 0; c < y.size(); ++c) {
        y(c) = f.lo(c) + (f.hi(c) - f.lo(c)) * unit(rng);
      }
      y -= (gi.dot(y) - b(f.row)) / gi.squaredNorm() * gi;
      const Vector r = g * y - b;
      bool inside = true;
      for (Eigen::Index i = 0; i < r.size() && inside; ++i) {
        inside = r(i) <= 0.5 * tol.boundary_band * (1.0 + std::abs(b(i)));
      }
      if (inside) found = y;
    }
    if (!found) {
      const Vector w = random_weights(rng, static_cast<Eigen::Index>(f.extremes.size()));
      Vector y = Vector::Zero(p.dim());
      for (std::size_t j = 0; j < f.extremes.size(); ++j) {
        y += w(static_cast<Eigen::Index>(j)) * f.extremes[j];
      }
      found = y;
    }
    out.push_back({*found, BoundaryTag::Constraints,
                   active_constraints(p, *found, tol.boundary_band)});
  }
  return out;
}

std::vector<BoundaryPoint> sample_vpolytope(const VPolytope& p, int count,
                                            std::mt19937_64& rng, const Tolerances& tol) {
  const Matrix& v = p.vertices();
  const Eigen::Index n = p.dim();
  const Eigen::Index l = p.size();
  std::vector<BoundaryPoint> out;
  for (Eigen::Index i = 0; i < l && static_cast<int>(out.size()) < count; ++i) {
    out.push_back({v.col(i), BoundaryTag::Vertex, {static_cast<int>(i)}});
  }
  const double cap = 1e3 * (1.0 + v.cwiseAbs().maxCoeff());
  while (static_cast<int>(out.size()) < count) {
    // Shoot a ray from a random interior point and stop at the boundary.
    const Vector start = v * random_weights(rng, l);
    const Vector d = random_direction(rng, n);
    LinearProgram lp;
    lp.cost = Vector::Zero(l + 1);
    lp.cost(l) = -1.0;
    lp.eq = Matrix::Zero(n + 1, l + 1);
    lp.eq.topLeftCorner(n, l) = v;
    lp.eq.block(0, l, n, 1) = -d;
    lp.eq.row(n).head(l).setOnes();
    lp.eq_rhs = Vector::Zero(n + 1);
    lp.eq_rhs.head(n) = start;
    lp.eq_rhs(n) = 1.0;
    lp.ub = Matrix::Zero(1, l + 1);
    lp.ub(0, l) = 1.0;
    lp.ub_rhs = Vector::Constant(1, cap);
    const LpSolution sol = solve_lp(lp, tol);
    if (sol.status != LpStatus::Optimal) continue;
    const Vector theta = sol.z.head(l);
    out.push_back({v * theta, BoundaryTag::Face, support(theta)});
  }
  return out;
}

std::vector<BoundaryPoint> sample_vcone(const VCone& c, int count, std::mt19937_64& rng,
                                        const Tolerances& tol) {
  const Matrix& u = c.unit_rays();
  const Eigen::Index n = c.dim();
  const Eigen::Index l = c.size();
  std::vector<BoundaryPoint> out;
  for (Eigen::Index i = 0; i < l && static_cast<int>(out.size()) < count; ++i) {
    out.push_back({u.col(i), BoundaryTag::Ray, {static_cast<int>(i)}});
  }
  const double cap = 1e3;
  int misses = 0;
  while (static_cast<int>(out.size()) < count) {
    Vector start = u * random_weights(rng, l);
    if (start.norm() < 1e-9) {
      start = u.col(0);
    }
    start /= start.norm();
    const Vector d = random_direction(rng, n);
    LinearProgram lp;
    lp.cost = Vector::Zero(l + 1);
    lp.cost(l) = -1.0;
    lp.eq = Matrix::Zero(n, l + 1);
    lp.eq.leftCols(l) = u;
    lp.eq.col(l) = -d;
    lp.eq_rhs = start;
    lp.ub = Matrix::Zero(1, l + 1);
    lp.ub(0, l) = 1.0;
    lp.ub_rhs = Vector::Constant(1, cap);
    const LpSolution sol = solve_lp(lp, tol);
    const bool escaped = sol.status != LpStatus::Optimal || sol.z(l) >= 0.999 * cap;
    if (escaped && ++misses < 64) continue;
    misses = 0;
    Vector theta = escaped ? Vector(Vector::Unit(l, static_cast<Eigen::Index>(out.size()) % l))
                           : Vector(sol.z.head(l));
    Vector x = u * theta;
    const double norm = x.norm();
    if (norm < 1e-12) continue;
    out.push_back({x / norm, BoundaryTag::Face, support(theta)});
  }
  return out;
}

}  // namespace

std::vector<BoundaryPoint> sample_boundary(const ConvexSet& s, int count, std::uint64_t seed,
                                           const Tolerances& tol) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  std::mt19937_64 rng(seed);
  switch (s.kind()) {
    case SetKind::HPolyhedron:
      return sample_hpolyhedron(s.as<HPolyhedron>(), count, rng, tol);
    case SetKind::VPolytope:
      return sample_vpolytope(s.as<VPolytope>(), count, rng, tol);
    case SetKind::VCone:
      return sample_vcone(s.as<VCone>(), count, rng, tol);
    case SetKind::Ellipsoid: {
      const auto& e = s.as<Ellipsoid>();
      const EigenResult& eig = e.eigen();
      const Matrix inv_sqrt = eig.vectors *
                              eig.values.cwiseSqrt().cwiseInverse().asDiagonal() *
                              eig.vectors.transpose();
      std::vector<BoundaryPoint> out;
      for (int k = 0; k < count; ++k) {
        Vector x = inv_sqrt * random_direction(rng, e.dim());
        x /= std::sqrt(x.dot(e.shape() * x));
        out.push_back({x, BoundaryTag::QuadraticSurface, {}});
      }
      return out;
    }
    case SetKind::LorenzCone: {
      const auto& c = s.as<LorenzCone>();
      const EigenResult& eig = c.eigen();
      const Eigen::Index n = c.dim();
      std::vector<BoundaryPoint> out;
      out.push_back({Vector::Zero(n), BoundaryTag::Apex, {}});
      while (static_cast<int>(out.size()) < count) {
        if (n == 1) {
          out.push_back({Vector::Zero(n), BoundaryTag::Apex, {}});
          continue;
        }
        // In eigen-coordinates: sum_{k<n-1} lambda_k z_k^2 = |lambda_n| z_n^2.
        const Vector w = random_direction(rng, n - 1);
        Vector z(n);
        for (Eigen::Index k = 0; k < n - 1; ++k) z(k) = w(k) / std::sqrt(eig.values(k));
        z(n - 1) = 1.0 / std::sqrt(-eig.values(n - 1));
        Vector x = eig.vectors * z;
        x /= x.norm();
        out.push_back({x, BoundaryTag::QuadraticSurface, {}});
      }
      return out;
    }
  }
  return {};
}

}  // namespace nagumo
