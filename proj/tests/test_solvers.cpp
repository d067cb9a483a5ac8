#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nagumo/error.hpp"
#include "nagumo/lp.hpp"
#include "nagumo/solvers.hpp"
#include "oracles.hpp"

using namespace nagumo;

namespace {

Matrix triangle() {
  Matrix v(2, 3);
  v << 0, 1, 0,
       0, 0, 1;
  return v;
}

// f = sum_j c_j (x^j - x^i) with c >= 0 lies in the tangent cone at vertex i.
Vector cone_combination(std::mt19937_64& rng, const Matrix& v, int i) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vector f = Vector::Zero(v.rows());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    if (j != i) f += u(rng) * (v.col(j) - v.col(i));
  }
  return f;
}

}  // namespace

TEST(SimplexLp, BoundedOptimum) {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x, y >= 0  ->  (8/5, 6/5)
  LinearProgram lp;
  lp.cost = Eigen::Vector2d(-1, -1);
  lp.ub.resize(2, 2);
  lp.ub << 1, 2, 3, 1;
  lp.ub_rhs = Eigen::Vector2d(4, 6);
  const LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.z(0), 1.6, 1e-10);
  EXPECT_NEAR(s.z(1), 1.2, 1e-10);
  EXPECT_NEAR(s.objective, -2.8, 1e-10);
}

TEST(SimplexLp, Infeasible) {
  LinearProgram lp;
  lp.cost = Vector::Zero(1);
  lp.eq = Matrix::Ones(1, 1);
  lp.eq_rhs = -Vector::Ones(1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(SimplexLp, Unbounded) {
  LinearProgram lp;
  lp.cost = Eigen::Vector2d(-1, 0);
  lp.ub = Matrix(1, 2);
  lp.ub << 0, 1;
  lp.ub_rhs = Vector::Ones(1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(LpFeasible, TriangleCornerInward) {
  const auto p = LPFeasibilityProblem::for_vertex(triangle(), Eigen::Vector2d(0.5, 0.5), 0);
  const OptResult r = lp_feasible(p);
  ASSERT_EQ(r.status, OptStatus::Feasible);
  EXPECT_NEAR(r.alpha(0), -1.0, 1e-9);
  EXPECT_NEAR(r.alpha(1), 0.5, 1e-9);
  EXPECT_NEAR(r.alpha(2), 0.5, 1e-9);
}

TEST(LpFeasible, TriangleCornerOutward) {
  const auto p = LPFeasibilityProblem::for_vertex(triangle(), Eigen::Vector2d(-1, 0), 0);
  EXPECT_EQ(lp_feasible(p).status, OptStatus::Infeasible);
}

TEST(LpFeasible, ZeroField) {
  std::mt19937_64 rng(3);
  const Matrix v = oracle::random_matrix(rng, 3, 5);
  const OptResult r = lp_feasible(LPFeasibilityProblem::for_vertex(v, Vector::Zero(3), 2));
  ASSERT_EQ(r.status, OptStatus::Feasible);
  EXPECT_LE(r.alpha.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LpFeasible, BadIndexThrows) {
  try {
    LPFeasibilityProblem::for_vertex(triangle(), Eigen::Vector2d(0, 0), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(LpFeasible, CoefficientsResubstitute) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const Eigen::Index l = 2 + trial % 5;
    const Matrix v = oracle::random_matrix(rng, n, l);
    const int i = trial % static_cast<int>(l);
    const Vector f = cone_combination(rng, v, i);
    const auto p = LPFeasibilityProblem::for_vertex(v, f, i);
    const OptResult r = lp_feasible(p);
    ASSERT_EQ(r.status, OptStatus::Feasible) << "trial " << trial;
    EXPECT_LE((v * r.alpha - f).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_LE(std::abs(r.alpha.sum()), 1e-8);
    for (Eigen::Index j = 0; j < l; ++j) {
      if (j != i) EXPECT_GE(r.alpha(j), -1e-10);
    }
  }
}

TEST(LpDualCheck, TriangleCase) {
  const auto p = LPFeasibilityProblem::for_vertex(triangle(), Eigen::Vector2d(0.5, 0.5), 0);
  const OptResult r = lp_feasible(p);
  const DualCheck d = lp_dual_check(p, r);
  EXPECT_TRUE(d.ok);
  EXPECT_LE(d.max_residual, 1e-7);
}

TEST(LpDualCheck, ZeroFieldGivesZeroDual) {
  const auto p = LPFeasibilityProblem::for_vertex(triangle(), Eigen::Vector2d(0, 0), 1);
  const OptResult r = lp_feasible(p);
  const DualCheck d = lp_dual_check(p, r);
  EXPECT_TRUE(d.ok);
  EXPECT_EQ(d.y.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(d.s.cwiseAbs().maxCoeff(), 0.0);
}

TEST(LpDualCheck, CorruptedPrimalRejected) {
  const auto p = LPFeasibilityProblem::for_vertex(triangle(), Eigen::Vector2d(0.5, 0.5), 0);
  OptResult r = lp_feasible(p);
  r.alpha(1) = -r.alpha(1);
  const DualCheck d = lp_dual_check(p, r);
  EXPECT_FALSE(d.ok);
  EXPECT_GE(d.violated_row, 0);
  EXPECT_FALSE(d.violated.empty());
}

TEST(QpNearest, ClippedCoefficient) {
  const auto p = QPProblem::for_vertex(triangle(), Eigen::Vector2d(-1, -1), 1);
  const OptResult r = qp_nearest(p);
  ASSERT_EQ(r.status, OptStatus::Optimal);
  EXPECT_GT(r.objective, 0.0);
  EXPECT_NEAR(r.alpha(2), 0.0, 1e-12);
  EXPECT_NEAR(r.objective, oracle::brute_force_qp(triangle(), Eigen::Vector2d(-1, -1), 1, true),
              1e-12);
  // Nearest generated direction is (-1, 0), leaving residual (0, -1).
  EXPECT_NEAR(r.objective, 0.5, 1e-12);
}

TEST(QpNearest, GeneratorItself) {
  const Matrix v = triangle();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const OptResult r = qp_nearest(QPProblem::for_vertex(v, v.col(j) - v.col(i), i));
      EXPECT_NEAR(r.objective, 0.0, 1e-12);
      EXPECT_NEAR(r.alpha(j), 1.0, 1e-9);
      EXPECT_NEAR(r.alpha(i), -1.0, 1e-9);
    }
  }
}

TEST(QpNearest, ZeroField) {
  const OptResult r = qp_nearest(QPProblem::for_vertex(triangle(), Vector::Zero(2), 2));
  EXPECT_NEAR(r.objective, 0.0, 1e-15);
  EXPECT_LE(r.alpha.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(KktResiduals, OptimalResultsSatisfyKkt) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const Eigen::Index l = 2 + trial % 5;
    const Matrix v = oracle::random_matrix(rng, n, l);
    const Vector f = oracle::random_normal(rng, n);
    const auto p = QPProblem::for_vertex(v, f, static_cast<int>(trial % l));
    const Eigen::Vector4d k = kkt_residuals(p, qp_nearest(p));
    EXPECT_LE(k.maxCoeff(), 1e-7) << "trial " << trial;
  }
}

TEST(KktResiduals, EqualityViolation) {
  const auto p = QPProblem::for_vertex(triangle(), Vector::Zero(2), 0);
  OptResult r;
  r.status = OptStatus::Optimal;
  r.alpha = Eigen::Vector3d(-1.0, 0.6, 0.5);
  r.multipliers = Vector::Zero(3);
  EXPECT_NEAR(kkt_residuals(p, r)(1), 0.1, 1e-15);
}

TEST(KktResiduals, PerturbedMultipliers) {
  const auto p = QPProblem::for_vertex(triangle(), Eigen::Vector2d(0.5, 0.5), 0);
  OptResult r = qp_nearest(p);
  r.multipliers(1) += 0.3;
  r.multipliers(2) += 0.2;
  double direct = 0.0;
  for (int j = 1; j < 3; ++j) direct += r.multipliers(j) * r.alpha(j);
  const double comp = kkt_residuals(p, r)(3);
  EXPECT_GT(comp, 0.0);
  EXPECT_NEAR(comp, std::abs(direct), 1e-15);
}

TEST(Backends, LpAndQpAgreeWithEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const Eigen::Index l = 2 + trial % 5;
    const Matrix v = oracle::random_matrix(rng, n, l);
    const int i = static_cast<int>(trial % l);
    const Vector f = trial % 2 == 0 ? cone_combination(rng, v, i) : oracle::random_normal(rng, n);
    const OptResult lp = lp_feasible(LPFeasibilityProblem::for_vertex(v, f, i));
    const OptResult qp = qp_nearest(QPProblem::for_vertex(v, f, i));
    EXPECT_EQ(lp.status == OptStatus::Feasible, qp.objective <= 1e-9) << "trial " << trial;
    EXPECT_NEAR(qp.objective, oracle::brute_force_qp(v, f, i, true), 1e-8) << "trial " << trial;
  }
}

TEST(Backends, RayProblemsAgree) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 2 + trial % 3;
    const Eigen::Index l = 2 + trial % 4;
    const Matrix r = oracle::random_matrix(rng, n, l);
    const int i = static_cast<int>(trial % l);
    const Vector f = oracle::random_normal(rng, n);
    const OptResult lp = lp_feasible(LPFeasibilityProblem::for_ray(r, f, i));
    const OptResult qp = qp_nearest(QPProblem::for_ray(r, f, i));
    EXPECT_EQ(lp.status == OptStatus::Feasible, qp.objective <= 1e-9) << "trial " << trial;
    EXPECT_NEAR(qp.objective, oracle::brute_force_qp(r, f, i, false), 1e-8);
  }
}

TEST(Backends, Deterministic) {
  std::mt19937_64 rng(41);
  const Matrix v = oracle::random_matrix(rng, 3, 6);
  const Vector f = oracle::random_normal(rng, 3);
  const OptResult a = qp_nearest(QPProblem::for_vertex(v, f, 2));
  const OptResult b = qp_nearest(QPProblem::for_vertex(v, f, 2));
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.objective, b.objective);
  const OptResult c = lp_feasible(LPFeasibilityProblem::for_vertex(v, f, 2));
  const OptResult d = lp_feasible(LPFeasibilityProblem::for_vertex(v, f, 2));
  EXPECT_EQ(c.alpha, d.alpha);
}

TEST(Projections, ConvexHullOfSquare) {
  Matrix sq(2, 4);
  sq << 0, 1, 1, 0,
        0, 0, 1, 1;
  const Projection p = project_convex_hull(sq, Eigen::Vector2d(2, 0.5));
  EXPECT_NEAR(p.point(0), 1.0, 1e-10);
  EXPECT_NEAR(p.point(1), 0.5, 1e-10);
  EXPECT_NEAR(p.distance, 1.0, 1e-10);
  EXPECT_NEAR(project_convex_hull(sq, Eigen::Vector2d(0.3, 0.7)).distance, 0.0, 1e-12);
}

TEST(Projections, ConicHullOfQuadrant) {
  const Projection p = project_conic_hull(Matrix::Identity(2, 2), Eigen::Vector2d(-3, 4));
  EXPECT_NEAR(p.point(0), 0.0, 1e-12);
  EXPECT_NEAR(p.point(1), 4.0, 1e-12);
  EXPECT_NEAR(p.distance, 3.0, 1e-12);
}

TEST(Projections, PolyhedronBox) {
  Matrix g(4, 2);
  g << 1, 0, 0, 1, -1, 0, 0, -1;
  const Vector b = Eigen::Vector4d(1, 1, 0, 0);
  const Projection p = project_polyhedron(g, b, Eigen::Vector2d(3, -4));
  EXPECT_NEAR(p.point(0), 1.0, 1e-9);
  EXPECT_NEAR(p.point(1), 0.0, 1e-9);
  EXPECT_NEAR(p.distance, std::sqrt(4.0 + 16.0), 1e-9);
}

TEST(FeasiblePoint, EmptyAndNonEmpty) {
  Matrix g(2, 1);
  g << 1, -1;
  EXPECT_FALSE(feasible_point(g, Eigen::Vector2d(-1, 0)).has_value());
  const auto x = feasible_point(g, Eigen::Vector2d(2, -1));
  ASSERT_TRUE(x.has_value());
  EXPECT_LE((g * *x - Eigen::Vector2d(2, -1)).maxCoeff(), 1e-9);
}
