#include "nagumo/checkers.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "nagumo/error.hpp"
#include "nagumo/lp.hpp"
#include "nagumo/tangent.hpp"

namespace nagumo {

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Invariant: return "Invariant";
    case Decision::NotInvariant: return "NotInvariant";
    case Decision::Unknown: return "Unknown";
  }
  return "unknown";
}

namespace {

void require_square(const Matrix& a, Eigen::Index n) {
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch,
                "system matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    ", set dimension is " + std::to_string(n));
  }
  require_finite(a, "A");
}

std::string vector_text(const Vector& v) {
  std::string out = "(";
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(v(k));
  }
  return out + ")";
}

// Shared by vertices and rays: row-wise generator LPs, first failure wins.
Verdict check_generators(const Matrix& gens, bool rays, const DynamicalSystem& sys,
                         const CheckOptions& opts) {
  Verdict v;
  v.method = rays ? "ray-lp" : "vertex-lp";
  GeneratorCertificate cert;
  cert.rays = rays;
  for (Eigen::Index i = 0; i < gens.cols(); ++i) {
    const Vector x = gens.col(i);
    const Vector f = sys(opts.t0, x);
    const int idx = static_cast<int>(i);
    const LPFeasibilityProblem lp = rays ? LPFeasibilityProblem::for_ray(gens, f, idx)
                                         : LPFeasibilityProblem::for_vertex(gens, f, idx);
    const OptResult r = lp_feasible(lp, opts.tol);
    if (r.status != OptStatus::Feasible) {
      const QPProblem qp =
          rays ? QPProblem::for_ray(gens, f, idx) : QPProblem::for_vertex(gens, f, idx);
      const OptResult q = qp_nearest(qp, opts.tol);
      v.decision = Decision::NotInvariant;
      v.counterexample = Counterexample{
          x, std::sqrt(2.0 * q.objective),
          std::string(rays ? "ray " : "vertex ") + std::to_string(i) +
              ": f(x) is not a combination of the tangent generators"};
      return v;
    }
    cert.residuals.push_back((lp.columns * r.alpha - lp.target).norm());
    cert.coefficients.push_back(r.alpha);
  }
  v.decision = Decision::Invariant;
  v.certificate = std::move(cert);
  return v;
}

// Generator conditions for linear systems; generator conditions plus
// sampling for general ones.
Verdict check_vform(const ConvexSet& s, const Matrix& gens, bool rays,
                    const DynamicalSystem& sys, const CheckOptions& opts) {
  if (sys.dim() != gens.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "system and set dimensions differ");
  }
  Verdict v = check_generators(gens, rays, sys, opts);
  if (sys.is_linear() || v.decision == Decision::NotInvariant) return v;

  Verdict sampled = check_nonlinear_sampled(s, sys, opts);
  sampled.method = v.method + "+sampled";
  if (sampled.decision == Decision::Unknown) {
    sampled.certificate = std::move(v.certificate);
    sampled.warnings.push_back(
        "generator conditions hold; for a general system they are checked alongside boundary "
        "samples only");
  }
  return sampled;
}

}  // namespace

Verdict check_orthant_linear(const Matrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "A must be square");
  require_finite(a, "A");
  Verdict v;
  v.method = "metzler";
  double min_off = std::numeric_limits<double>::infinity();
  const Eigen::Index n = a.rows();
  // Ray e^i: (A e^i)_j >= 0 for every j != i.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      min_off = std::min(min_off, a(j, i));
      if (a(j, i) < -tol.metzler && !v.counterexample) {
        v.counterexample = Counterexample{
            Vector::Unit(n, i), a(j, i),
            "(A e" + std::to_string(i + 1) + ")_" + std::to_string(j + 1) + " < 0"};
      }
    }
  }
  if (v.counterexample) {
    v.decision = Decision::NotInvariant;
    return v;
  }
  v.decision = Decision::Invariant;
  v.certificate = MetzlerCertificate{n > 1 ? min_off : 0.0};
  return v;
}

Verdict check_hpoly_linear(const HPolyhedron& p, const Matrix& a, const Tolerances& tol) {
  const Eigen::Index n = p.dim();
  const Eigen::Index m = p.num_constraints();
  require_square(a, n);
  if (!feasible_point(p.normals(), p.offsets(), tol)) {
    throw Error(ErrorCode::EmptySet, "H-polyhedron is empty");
  }
  const Matrix& g = p.normals();
  const double box = tol.bounding_box;

  // x = u - v; rows: G x <= b, |x_k| <= box.
  LinearProgram lp;
  lp.ub = Matrix::Zero(m + 2 * n, 2 * n);
  lp.ub.topLeftCorner(m, n) = g;
  lp.ub.topRightCorner(m, n) = -g;
  lp.ub.block(m, 0, n, n).setIdentity();
  lp.ub.block(m, n, n, n) = -Matrix::Identity(n, n);
  lp.ub.block(m + n, 0, n, n) = -Matrix::Identity(n, n);
  lp.ub.block(m + n, n, n, n).setIdentity();
  lp.ub_rhs = Vector::Constant(m + 2 * n, box);
  lp.ub_rhs.head(m) = p.offsets();
  lp.eq = Matrix::Zero(1, 2 * n);
  lp.eq_rhs = Vector::Zero(1);
  lp.cost = Vector::Zero(2 * n);

  Verdict v;
  v.method = "facet-lp";
  FacetCertificate cert;
  bool box_warning = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    FacetBound fb;
    fb.row = static_cast<int>(i);
    if (g.row(i).norm() == 0.0) {
      fb.empty = true;
      cert.facets.push_back(fb);
      continue;
    }
    const Vector c = a.transpose() * g.row(i).transpose();
    lp.eq.leftCols(n) = g.row(i);
    lp.eq.rightCols(n) = -g.row(i);
    lp.eq_rhs(0) = p.offsets()(i);
    lp.cost.head(n) = -c;
    lp.cost.tail(n) = c;
    const LpSolution sol = solve_lp(lp, tol);
    if (sol.status != LpStatus::Optimal) {
      fb.empty = true;
      cert.facets.push_back(fb);
      continue;
    }
    Vector x = sol.z.head(n) - sol.z.tail(n);
    fb.on_box = x.cwiseAbs().maxCoeff() >= box * (1.0 - 1e-9);
    if (p.is_cone() && x.norm() > 0.0) x /= x.norm();
    fb.optimum = c.dot(x);
    fb.argmax = x;
    box_warning = box_warning || (fb.on_box && !p.is_cone());
    if (fb.optimum > tol.facet_optimum && !v.counterexample) {
      v.counterexample =
          Counterexample{x, fb.optimum, "g_" + std::to_string(i) + "^T A x > 0 on facet " +
                                            std::to_string(i)};
    }
    cert.facets.push_back(fb);
  }
  if (box_warning) {
    v.warnings.push_back("a facet optimum sits on the bounding box; the facet is unbounded");
  }
  if (v.counterexample) {
    v.decision = Decision::NotInvariant;
    return v;
  }
  v.decision = Decision::Invariant;
  v.certificate = std::move(cert);
  return v;
}

Verdict check_vpolytope(const VPolytope& p, const DynamicalSystem& sys, const CheckOptions& opts) {
  return check_vform(ConvexSet(p), p.vertices(), false, sys, opts);
}

Verdict check_vcone(const VCone& c, const DynamicalSystem& sys, const CheckOptions& opts) {
  return check_vform(ConvexSet(c), c.rays(), true, sys, opts);
}

Verdict check_ellipsoid_linear(const Ellipsoid& e, const Matrix& a, const Tolerances& tol) {
  require_square(a, e.dim());
  const Matrix& q = e.shape();
  const Matrix m = a.transpose() * q + q * a;
  const GeneralizedEigenPair top = gen_eig_max_pair(m, q, tol);
  Verdict v;
  v.method = "generalized-eigenvalue";
  if (top.value <= tol.spectral) {
    v.decision = Decision::Invariant;
    SpectralCertificate cert;
    cert.eta = top.value;
    cert.witness = m - top.value * q;
    cert.lambda_max = lambda_max(cert.witness, tol);
    v.certificate = std::move(cert);
    return v;
  }
  v.decision = Decision::NotInvariant;
  const Vector x = top.vector;
  v.counterexample = Counterexample{x, x.dot(q * (a * x)),
                                    "x^T Q A x > 0 at the top generalized eigenvector"};
  return v;
}

Verdict check_lorenz_linear(const LorenzCone& c, const Matrix& a, const CheckOptions& opts) {
  const Tolerances& tol = opts.tol;
  require_square(a, c.dim());
  const Matrix& q = c.shape();
  const Matrix m = a.transpose() * q + q * a;

  const double beta = eta_bracket(m, q, tol);
  const ScalarMinimum best = minimize_scalar_convex(
      [&](double eta) { return lambda_max(m - eta * q, tol); }, -beta, beta,
      tol.eta_search * beta);
  Verdict v;
  if (best.value <= tol.spectral) {
    v.decision = Decision::Invariant;
    v.method = "eta-search";
    SpectralCertificate cert;
    cert.eta = best.argmin;
    cert.lambda_max = best.value;
    cert.witness = m - best.argmin * q;
    v.certificate = std::move(cert);
    return v;
  }

  v.method = "eta-search+sampled";
  const auto samples = sample_boundary(ConvexSet(c), opts.samples, opts.seed, tol);
  v.samples = static_cast<int>(samples.size());
  const double threshold = tol.spectral * (1.0 + m.cwiseAbs().maxCoeff());
  double worst = threshold;
  for (const BoundaryPoint& bp : samples) {
    const double value = bp.point.dot(q * (a * bp.point));
    if (value > worst) {
      worst = value;
      v.counterexample = Counterexample{bp.point, value, "x^T Q A x > 0 on the cone surface"};
    }
  }
  v.decision = v.counterexample ? Decision::NotInvariant : Decision::Unknown;
  if (!v.counterexample) {
    v.warnings.push_back("no spectral certificate (min lambda_max = " +
                         std::to_string(best.value) + ") and no violating sample");
  }
  return v;
}

Verdict check_nonlinear_sampled(const ConvexSet& s, const DynamicalSystem& sys,
                                const CheckOptions& opts) {
  if (sys.dim() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "system and set dimensions differ");
  }
  const auto samples = sample_boundary(s, opts.samples, opts.seed, opts.tol);
  Verdict v;
  v.method = "sampled";
  v.samples = static_cast<int>(samples.size());
  double worst = -std::numeric_limits<double>::infinity();
  for (const BoundaryPoint& bp : samples) {
    const TangentCone t = tangent_at(s, bp.point, opts.tol);
    const Vector f = sys(opts.t0, bp.point);
    require_finite(f, "f(t0, x)");
    if (cone_contains(t, f, opts.tol.cone_membership)) continue;
    const double value = cone_violation(t, f, opts.tol);
    if (value > worst) {
      worst = value;
      v.counterexample = Counterexample{bp.point, value,
                                        "f(t0, x) leaves the tangent cone at " +
                                            vector_text(bp.point)};
    }
  }
  v.decision = v.counterexample ? Decision::NotInvariant : Decision::Unknown;
  return v;
}

Verdict check(const ConvexSet& s, const DynamicalSystem& sys, const CheckOptions& opts) {
  if (sys.dim() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "system dimension " + std::to_string(sys.dim()) +
                                                  " differs from set dimension " +
                                                  std::to_string(s.dim()));
  }
  if (!sys.is_linear()) {
    if (const auto* p = s.get_if<VPolytope>()) return check_vpolytope(*p, sys, opts);
    if (const auto* c = s.get_if<VCone>()) return check_vcone(*c, sys, opts);
    return check_nonlinear_sampled(s, sys, opts);
  }
  const Matrix& a = sys.matrix();
  if (s.is_orthant()) return check_orthant_linear(a, opts.tol);
  switch (s.kind()) {
    case SetKind::HPolyhedron: return check_hpoly_linear(s.as<HPolyhedron>(), a, opts.tol);
    case SetKind::VPolytope: return check_vpolytope(s.as<VPolytope>(), sys, opts);
    case SetKind::VCone: return check_vcone(s.as<VCone>(), sys, opts);
    case SetKind::Ellipsoid: return check_ellipsoid_linear(s.as<Ellipsoid>(), a, opts.tol);
    case SetKind::LorenzCone: return check_lorenz_linear(s.as<LorenzCone>(), a, opts);
  }
  throw Error(ErrorCode::InvalidArgument, "unsupported set kind");
}

}  // namespace nagumo
