#include "nagumo/lp.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "nagumo/error.hpp"

namespace nagumo {

Eigen::Index LinearProgram::num_vars() const {
  if (cost.size() > 0) return cost.size();
  if (eq.rows() > 0) return eq.cols();
  return ub.cols();
}

namespace {

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols)
      : t_(Matrix::Zero(rows, cols + 1)), basis_(static_cast<std::size_t>(rows), -1) {}

  Matrix& body() { return t_; }
  std::vector<int>& basis() { return basis_; }
  Eigen::Index rows() const { return t_.rows(); }
  Eigen::Index cols() const { return t_.cols() - 1; }
  double rhs(Eigen::Index r) const { return t_(r, cols()); }

  void set_cost(const Vector& c) {
    reduced_ = Vector::Zero(t_.cols());
    reduced_.head(cols()) = c;
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const double cb = c(basis_[static_cast<std::size_t>(r)]);
      if (cb != 0.0) reduced_ -= cb * t_.row(r).transpose();
    }
    cost_scale_ = 1.0 + (c.size() > 0 ? c.cwiseAbs().maxCoeff() : 0.0);
  }

  double value() const { return -reduced_(cols()); }

  void pivot(Eigen::Index r, Eigen::Index j) {
    t_.row(r) /= t_(r, j);
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (i != r && t_(i, j) != 0.0) t_.row(i) -= t_(i, j) * t_.row(r);
    }
    if (reduced_(j) != 0.0) reduced_ -= reduced_(j) * t_.row(r).transpose();
    basis_[static_cast<std::size_t>(r)] = static_cast<int>(j);
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool run(Eigen::Index allowed, const Tolerances& tol, int& iterations, int budget) {
    for (;;) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (reduced_(j) < -tol.reduced_cost * cost_scale_) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;

      Eigen::Index leaving = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index r = 0; r < rows(); ++r) {
        const double a = t_(r, entering);
        if (a <= tol.pivot) continue;
        const double ratio = std::max(0.0, rhs(r)) / a;
        const bool tie = leaving >= 0 && std::abs(ratio - best) <= 1e-12 * (1.0 + best);
        if (leaving < 0 || (!tie && ratio < best) ||
            (tie && basis_[static_cast<std::size_t>(r)] <
                        basis_[static_cast<std::size_t>(leaving)])) {
          leaving = r;
          best = std::min(best, ratio);
        }
      }
      if (leaving < 0) return false;
      if (++iterations > budget) {
        throw Error(ErrorCode::NumericalFailure,
                    "simplex exceeded " + std::to_string(budget) + " pivots");
      }
      pivot(leaving, entering);
    }
  }

  Vector basic_solution(Eigen::Index n) const {
    Vector z = Vector::Zero(n);
    for (Eigen::Index r = 0; r < rows(); ++r) {
      const int b = basis_[static_cast<std::size_t>(r)];
      if (b < n) z(b) = std::max(0.0, rhs(r));
    }
    return z;
  }

 private:
  Matrix t_;
  std::vector<int> basis_;
  Vector reduced_;
  double cost_scale_ = 1.0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, const Tolerances& tol) {
  const Eigen::Index nv = lp.num_vars();
  const Eigen::Index m_ub = lp.ub.rows();
  const Eigen::Index m_eq = lp.eq.rows();
  if ((m_ub > 0 && (lp.ub.cols() != nv || lp.ub_rhs.size() != m_ub)) ||
      (m_eq > 0 && (lp.eq.cols() != nv || lp.eq_rhs.size() != m_eq)) ||
      (lp.cost.size() > 0 && lp.cost.size() != nv)) {
    throw Error(ErrorCode::DimensionMismatch, "linear program blocks disagree in shape");
  }

  // Rows whose slack cannot start basic need an artificial.
  std::vector<bool> needs_art(static_cast<std::size_t>(m_ub + m_eq), false);
  Eigen::Index n_art = 0;
  for (Eigen::Index r = 0; r < m_ub; ++r) {
    if (lp.ub_rhs(r) < 0.0) {
      needs_art[static_cast<std::size_t>(r)] = true;
      ++n_art;
    }
  }
  for (Eigen::Index r = 0; r < m_eq; ++r) {
    needs_art[static_cast<std::size_t>(m_ub + r)] = true;
    ++n_art;
  }

  const Eigen::Index n_struct = nv + m_ub;  // original + slack columns
  const Eigen::Index n_cols = n_struct + n_art;
  Tableau tab(m_ub + m_eq, n_cols);
  Matrix& t = tab.body();
  Eigen::Index art = n_struct;
  for (Eigen::Index r = 0; r < m_ub; ++r) {
    const double sign = lp.ub_rhs(r) < 0.0 ? -1.0 : 1.0;
    t.row(r).head(nv) = sign * lp.ub.row(r);
    t(r, nv + r) = sign;
    t(r, n_cols) = sign * lp.ub_rhs(r);
    if (needs_art[static_cast<std::size_t>(r)]) {
      t(r, art) = 1.0;
      tab.basis()[static_cast<std::size_t>(r)] = static_cast<int>(art++);
    } else {
      tab.basis()[static_cast<std::size_t>(r)] = static_cast<int>(nv + r);
    }
  }
  for (Eigen::Index k = 0; k < m_eq; ++k) {
    const Eigen::Index r = m_ub + k;
    const double sign = lp.eq_rhs(k) < 0.0 ? -1.0 : 1.0;
    t.row(r).head(nv) = sign * lp.eq.row(k);
    t(r, n_cols) = sign * lp.eq_rhs(k);
    t(r, art) = 1.0;
    tab.basis()[static_cast<std::size_t>(r)] = static_cast<int>(art++);
  }

  LpSolution out;
  const int budget = static_cast<int>(50 * (tab.rows() + n_cols) + 1000);

  if (n_art > 0) {
    Vector phase1 = Vector::Zero(n_cols);
    phase1.tail(n_art).setOnes();
    tab.set_cost(phase1);
    tab.run(n_cols, tol, out.iterations, budget);
    out.infeasibility = std::max(0.0, tab.value());
    if (out.infeasibility > tol.lp_feasibility) {
      out.status = LpStatus::Infeasible;
      out.z = tab.basic_solution(nv);
      return out;
    }
    // Drive zero-valued artificials out of the basis; rows where that is
    // impossible are redundant and keep their artificial parked at zero.
    for (Eigen::Index r = 0; r < tab.rows(); ++r) {
      if (tab.basis()[static_cast<std::size_t>(r)] < n_struct) continue;
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n_struct; ++j) {
        if (std::abs(t(r, j)) > tol.pivot) {
          col = j;
          break;
        }
      }
      if (col >= 0) tab.pivot(r, col);
    }
  }

  if (lp.cost.size() == 0) {
    out.status = LpStatus::Optimal;
    out.z = tab.basic_solution(nv);
    return out;
  }

  Vector phase2 = Vector::Zero(n_cols);
  phase2.head(nv) = lp.cost;
  tab.set_cost(phase2);
  const bool bounded = tab.run(n_struct, tol, out.iterations, budget);
  out.z = tab.basic_solution(nv);
  if (!bounded) {
    out.status = LpStatus::Unbounded;
    out.objective = -std::numeric_limits<double>::infinity();
    return out;
  }
  out.status = LpStatus::Optimal;
  out.objective = lp.cost.dot(out.z);
  return out;
}

}  // namespace nagumo
