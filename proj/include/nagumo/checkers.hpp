#ifndef NAGUMO_CHECKERS_HPP
#define NAGUMO_CHECKERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nagumo/config.hpp"
#include "nagumo/sets.hpp"
#include "nagumo/solvers.hpp"
#include "nagumo/system.hpp"

namespace nagumo {

enum class Decision { Invariant, NotInvariant, Unknown };

std::string_view to_string(Decision d);

// Smallest off-diagonal entry of A.
struct MetzlerCertificate {
  double min_offdiag = 0.0;
};

// One entry per row of G: max g_i^T A x over facet i.
struct FacetBound {
  int row = 0;
  bool empty = false;    // facet has no points; skipped
  bool on_box = false;   // maximizer touches the artificial bounding box
  double optimum = 0.0;
  Vector argmax;
};

struct FacetCertificate {
  std::vector<FacetBound> facets;
};

// Coefficients alpha^(i) per vertex (or ray) and the residual of
// re-substituting them into the generator equation.
struct GeneratorCertificate {
  bool rays = false;
  std::vector<Vector> coefficients;
  std::vector<double> residuals;
};

// A^T Q + Q A - eta Q has largest eigenvalue `lambda_max`. For an
// ellipsoid eta is the top generalized eigenvalue itself.
struct SpectralCertificate {
  double eta = 0.0;
  double lambda_max = 0.0;
  Matrix witness;  // A^T Q + Q A - eta Q
};

using Certificate =
    std::variant<MetzlerCertificate, FacetCertificate, GeneratorCertificate, SpectralCertificate>;

struct Counterexample {
  Vector point;
  double violation = 0.0;
  std::string detail;
};

struct Verdict {
  Decision decision = Decision::Unknown;
  std::string method;
  std::optional<Certificate> certificate;
  std::optional<Counterexample> counterexample;
  std::vector<std::string> warnings;
  int samples = 0;  // boundary samples examined, sampled checks only
};

struct CheckOptions {
  double t0 = 0.0;
  int samples = 10000;
  std::uint64_t seed = 0;
  Tolerances tol = default_tolerances();
};

Verdict check_orthant_linear(const Matrix& a, const Tolerances& tol = default_tolerances());

// One LP per facet. EmptySet if P is empty.
Verdict check_hpoly_linear(const HPolyhedron& p, const Matrix& a,
                           const Tolerances& tol = default_tolerances());

// Vertex conditions through the feasibility LP. For general systems the
// boundary is also sampled and the result is at best Unknown.
Verdict check_vpolytope(const VPolytope& p, const DynamicalSystem& sys,
                        const CheckOptions& opts = {});
Verdict check_vcone(const VCone& c, const DynamicalSystem& sys, const CheckOptions& opts = {});

Verdict check_ellipsoid_linear(const Ellipsoid& e, const Matrix& a,
                               const Tolerances& tol = default_tolerances());

// Spectral certificate first, boundary sampling second; Unknown if neither
// settles it.
Verdict check_lorenz_linear(const LorenzCone& c, const Matrix& a, const CheckOptions& opts = {});

// Tests f(t0, x) against the tangent cone at sampled boundary points.
// Never returns Invariant.
Verdict check_nonlinear_sampled(const ConvexSet& s, const DynamicalSystem& sys,
                                const CheckOptions& opts = {});

// Picks the checker for the (set, system) pair.
Verdict check(const ConvexSet& s, const DynamicalSystem& sys, const CheckOptions& opts = {});

}  // namespace nagumo

#endif  // NAGUMO_CHECKERS_HPP
