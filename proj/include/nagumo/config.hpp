#ifndef NAGUMO_CONFIG_HPP
#define NAGUMO_CONFIG_HPP

namespace nagumo {

// Every numeric threshold used by the library lives here. Functions take a
// `const Tolerances&` defaulted to these values; callers override per run.
struct Tolerances {
  // numerics
  double singular_pivot = 1e-12;
  double spd_pivot = 1e-10;
  double symmetry = 1e-9;
  int jacobi_sweeps = 100;
  double jacobi_offdiag = 1e-12;  // relative to ||M||_F
  double inertia_zero = 1e-10;

  // sets
  double boundary_band = 1e-8;
  double distinct_vertices = 1e-9;
  double min_ray_norm = 1e-9;
  int facet_rejections = 1000;

  // tangent cones
  double cone_membership = 1e-8;

  // solvers
  double lp_feasibility = 1e-9;   // phase-I optimum
  double lp_residual = 1e-8;
  double sign_slack = 1e-10;
  double pivot = 1e-11;
  double reduced_cost = 1e-11;
  double kkt = 1e-7;
  double dual_check = 1e-7;

  // checkers
  double facet_optimum = 1e-8;
  double metzler = 1e-10;
  double spectral = 1e-9;
  double bounding_box = 1e6;
  double eta_search = 1e-12;  // golden-section tolerance, relative to bracket

  // dynamics
  double exit_band = 1e-6;
  double inward_push = 1e-9;
  double divergence = 1e12;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances kDefaults{};
  return kDefaults;
}

}  // namespace nagumo

#endif  // NAGUMO_CONFIG_HPP
