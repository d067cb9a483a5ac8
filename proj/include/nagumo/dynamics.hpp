#ifndef NAGUMO_DYNAMICS_HPP
#define NAGUMO_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "nagumo/config.hpp"
#include "nagumo/sets.hpp"
#include "nagumo/system.hpp"

namespace nagumo {

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  double step = 0.0;
  bool diverged = false;  // stopped early at a non-finite or huge state
};

// One classic RK4 step.
Vector rk4_step(const DynamicalSystem& sys, double t, const Vector& x, double h);

// The matrix P with RK4 on x' = A x reading x_{k+1} = P x_k.
Matrix rk4_propagator(const Matrix& a, double h);

// Fixed-step RK4 over [t0, t0 + horizon]. InvalidArgument unless
// step > 0 and horizon >= step.
Trajectory integrate(const DynamicalSystem& sys, const Vector& x0, double t0, double horizon,
                     double step, const Tolerances& tol = default_tolerances());

// Scaling and squaring with a degree-6 Pade approximant.
Matrix expm(const Matrix& a);

// x(t0 + k h) = expm(k h A) x0 at the same time grid as `integrate`.
Trajectory integrate_exact(const Matrix& a, const Vector& x0, double t0, double horizon,
                           double step);

struct FalsifyOptions {
  int starts = 1000;
  double horizon = 10.0;
  double step = 1e-3;
  std::uint64_t seed = 0;
  double t0 = 0.0;
  Tolerances tol = default_tolerances();
};

struct Exit {
  int start_index = 0;
  Vector start;       // the boundary point the run was launched from
  Vector exit_point;  // first state found outside
  double t_exit = 0.0;
};

// Integrates from `starts` sampled boundary points, each pushed slightly
// inward, and reports the lowest-index run that leaves the set by more
// than tol.exit_band.
std::optional<Exit> falsify(const ConvexSet& s, const DynamicalSystem& sys,
                            const FalsifyOptions& opts = {});

// Same, from caller-supplied starts.
std::optional<Exit> falsify_from(const ConvexSet& s, const DynamicalSystem& sys,
                                 const std::vector<Vector>& starts,
                                 const FalsifyOptions& opts = {});

// One row per step: t, x1..xn.
void write_csv(std::ostream& out, const Trajectory& traj);

}  // namespace nagumo

#endif  // NAGUMO_DYNAMICS_HPP
