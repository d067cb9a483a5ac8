#include "nagumo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nagumo/error.hpp"

namespace nagumo {

Vector rk4_step(const DynamicalSystem& sys, double t, const Vector& x, double h) {
  const Vector k1 = sys(t, x);
  const Vector k2 = sys(t + 0.5 * h, x + 0.5 * h * k1);
  const Vector k3 = sys(t + 0.5 * h, x + 0.5 * h * k2);
  const Vector k4 = sys(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Matrix rk4_propagator(const Matrix& a, double h) {
  const Eigen::Index n = a.rows();
  const Matrix ha = h * a;
  Matrix term = Matrix::Identity(n, n);
  Matrix p = term;
  for (int k = 1; k <= 4; ++k) {
    term = (term * ha / static_cast<double>(k)).eval();
    p += term;
  }
  return p;
}

namespace {

Eigen::Index step_count(double horizon, double step) {
  if (!(step > 0.0) || !(horizon >= step) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::InvalidArgument, "need step > 0 and horizon >= step");
  }
  return static_cast<Eigen::Index>(std::floor(horizon / step + 1e-9));
}

// Outside-by-more-than-band test with no allocation for the cheap families.
class ExitTest {
 public:
  ExitTest(const ConvexSet& s, const Tolerances& tol) : set_(s), tol_(tol) {
    band_ = tol.exit_band;
    if (const auto* p = s.get_if<HPolyhedron>()) {
      scratch_.resize(p->num_constraints());
    } else {
      scratch_.resize(s.dim());
    }
    if (const auto* c = s.get_if<LorenzCone>()) {
      q_axis_ = c->shape() * c->axis();
      q_scale_ = c->eigen().values.cwiseAbs().maxCoeff();
    }
  }

  // V-forms need an LP per test; everything else is a few dot products.
  bool cheap() const {
    return set_.kind() != SetKind::VPolytope && set_.kind() != SetKind::VCone;
  }

  bool outside(const Vector& x) {
    switch (set_.kind()) {
      case SetKind::HPolyhedron: {
        const auto& p = set_.as<HPolyhedron>();
        scratch_.noalias() = p.normals() * x;
        for (Eigen::Index i = 0; i < scratch_.size(); ++i) {
          const double b = p.offsets()(i);
          if (scratch_(i) - b > band_ * (1.0 + std::abs(b))) return true;
        }
        return false;
      }
      case SetKind::Ellipsoid: {
        scratch_.noalias() = set_.as<Ellipsoid>().shape() * x;
        return x.dot(scratch_) - 1.0 > band_;
      }
      case SetKind::LorenzCone: {
        scratch_.noalias() = set_.as<LorenzCone>().shape() * x;
        const double xn = x.norm();
        if (x.dot(scratch_) > band_ * (1.0 + q_scale_ * xn * xn)) return true;
        return x.dot(q_axis_) > band_ * (1.0 + q_scale_ * xn);
      }
      case SetKind::VPolytope:
      case SetKind::VCone:
        return membership(set_, x, band_, tol_) == Membership::Outside;
    }
    return false;
  }

 private:
  const ConvexSet& set_;
  const Tolerances& tol_;
  double band_ = 0.0;
  Vector scratch_;
  Vector q_axis_;
  double q_scale_ = 0.0;
};

}  // namespace

Trajectory integrate(const DynamicalSystem& sys, const Vector& x0, double t0, double horizon,
                     double step, const Tolerances& tol) {
  if (x0.size() != sys.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "initial state dimension");
  }
  const Eigen::Index steps = step_count(horizon, step);
  Trajectory traj;
  traj.step = step;
  traj.times.reserve(static_cast<std::size_t>(steps + 1));
  traj.states.reserve(static_cast<std::size_t>(steps + 1));
  traj.times.push_back(t0);
  traj.states.push_back(x0);

  Matrix p;
  if (sys.is_linear()) p = rk4_propagator(sys.matrix(), step);
  Vector x = x0;
  for (Eigen::Index k = 1; k <= steps; ++k) {
    const double t = t0 + static_cast<double>(k - 1) * step;
    Vector next = sys.is_linear() ? Vector(p * x) : rk4_step(sys, t, x, step);
    if (!all_finite(next) || next.norm() > tol.divergence) {
      traj.diverged = true;
      if (all_finite(next)) {
        traj.times.push_back(t0 + static_cast<double>(k) * step);
        traj.states.push_back(next);
      }
      break;
    }
    x = std::move(next);
    traj.times.push_back(t0 + static_cast<double>(k) * step);
    traj.states.push_back(x);
  }
  return traj;
}

Matrix expm(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "expm needs a square matrix");
  require_finite(a, "expm argument");
  const Eigen::Index n = a.rows();
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  // Pade (6, 6): c_k = (12 - k)! 6! / (12! k! (6 - k)!).
  constexpr double c[7] = {1.0,         1.0 / 2.0,    5.0 / 44.0,      1.0 / 66.0,
                           1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  Matrix power = Matrix::Identity(n, n);
  Matrix num = Matrix::Identity(n, n);
  Matrix den = Matrix::Identity(n, n);
  for (int k = 1; k <= 6; ++k) {
    power = (power * scaled).eval();
    num += c[k] * power;
    den += ((k % 2 == 0) ? c[k] : -c[k]) * power;
  }
  Matrix r = den.partialPivLu().solve(num);
  for (int k = 0; k < squarings; ++k) r = (r * r).eval();
  return r;
}

Trajectory integrate_exact(const Matrix& a, const Vector& x0, double t0, double horizon,
                           double step) {
  const Eigen::Index steps = step_count(horizon, step);
  Trajectory traj;
  traj.step = step;
  for (Eigen::Index k = 0; k <= steps; ++k) {
    const double dt = static_cast<double>(k) * step;
    traj.times.push_back(t0 + dt);
    traj.states.push_back(expm(dt * a) * x0);
  }
  return traj;
}

std::optional<Exit> falsify_from(const ConvexSet& s, const DynamicalSystem& sys,
                                 const std::vector<Vector>& starts, const FalsifyOptions& opts) {
  if (sys.dim() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "system and set dimensions differ");
  }
  const Tolerances& tol = opts.tol;
  const Eigen::Index steps = step_count(opts.horizon, opts.step);
  const Vector center = interior_point(s, tol);
  ExitTest test(s, tol);
  const Eigen::Index stride = test.cheap() ? 1 : std::max<Eigen::Index>(1, steps / 200);

  Matrix p;
  if (sys.is_linear()) p = rk4_propagator(sys.matrix(), opts.step);
  Vector x(s.dim());
  Vector next(s.dim());
  for (std::size_t idx = 0; idx < starts.size(); ++idx) {
    const Vector& start = starts[idx];
    if (start.size() != s.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "start point dimension");
    }
    x = start;
    const Vector inward = center - start;
    if (inward.norm() > 0.0) {
      x += tol.inward_push * std::max(1.0, start.norm()) * inward / inward.norm();
    }
    for (Eigen::Index k = 1; k <= steps; ++k) {
      if (sys.is_linear()) {
        next.noalias() = p * x;
      } else {
        next = rk4_step(sys, opts.t0 + static_cast<double>(k - 1) * opts.step, x, opts.step);
      }
      x.swap(next);
      if (!all_finite(x)) break;
      const bool huge = x.norm() > tol.divergence;
      if ((k % stride == 0 || k == steps || huge) && test.outside(x)) {
        return Exit{static_cast<int>(idx), start, x, static_cast<double>(k) * opts.step};
      }
      if (huge) break;
    }
  }
  return std::nullopt;
}

std::optional<Exit> falsify(const ConvexSet& s, const DynamicalSystem& sys,
                            const FalsifyOptions& opts) {
  std::vector<Vector> starts;
  for (BoundaryPoint& bp : sample_boundary(s, opts.starts, opts.seed, opts.tol)) {
    starts.push_back(std::move(bp.point));
  }
  return falsify_from(s, sys, starts, opts);
}

void write_csv(std::ostream& out, const Trajectory& traj) {
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "t";
  for (Eigen::Index k = 0; k < n; ++k) out << ",x" << (k + 1);
  out << '\n';
  out.precision(17);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    out << traj.times[i];
    for (Eigen::Index k = 0; k < n; ++k) out << ',' << traj.states[i](k);
    out << '\n';
  }
}

}  // namespace nagumo
