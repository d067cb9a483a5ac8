#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nagumo/checkers.hpp"
#include "nagumo/cli.hpp"
#include "nagumo/dynamics.hpp"
#include "nagumo/error.hpp"
#include "nagumo/expression.hpp"
#include "nagumo/io.hpp"
#include "nagumo/numerics.hpp"
#include "nagumo/sets.hpp"
#include "nagumo/solvers.hpp"
#include "nagumo/tangent.hpp"

namespace py = pybind11;
using namespace nagumo;

namespace {

Matrix rows_to_columns(const Matrix& rows) { return rows.transpose(); }

std::string verdict_json(const Verdict& v) {
  Json j = {{"decision", std::string(to_string(v.decision))},
            {"method", v.method},
            {"certificate", v.certificate ? to_json(*v.certificate) : Json()},
            {"counterexample", v.counterexample ? to_json(*v.counterexample) : Json()},
            {"warnings", v.warnings},
            {"samples", v.samples}};
  return j.dump();
}

std::string opt_json(const OptResult& r) {
  const char* status = r.status == OptStatus::Feasible     ? "Feasible"
                       : r.status == OptStatus::Infeasible ? "Infeasible"
                                                           : "Optimal";
  return Json{{"status", status},
              {"alpha", to_json(r.alpha)},
              {"multipliers", to_json(r.multipliers)},
              {"objective", r.objective},
              {"iterations", r.iterations}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Positive-invariance checks for convex sets (C++ core)";
  m.attr("__version__") = kToolVersion;

  static py::exception<Error> error(m, "NagumoError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def("sym_eig", [](const Matrix& a) {
    const EigenResult r = sym_eig(a);
    return py::make_tuple(r.values, r.vectors);
  });
  m.def("gen_eig_max", [](const Matrix& a, const Matrix& q) { return gen_eig_max(a, q); });
  m.def("solve_linear", [](const Matrix& a, const Vector& b) { return solve_linear(a, b); });
  m.def("expm", &expm);

  py::class_<ConvexSet>(m, "ConvexSet")
      .def_property_readonly("kind", [](const ConvexSet& s) { return std::string(to_string(s.kind())); })
      .def_property_readonly("dim", &ConvexSet::dim)
      .def("membership",
           [](const ConvexSet& s, const Vector& x) { return std::string(to_string(membership(s, x))); })
      .def(
          "sample_boundary",
          [](const ConvexSet& s, int count, std::uint64_t seed) {
            std::vector<Vector> out;
            for (auto& bp : sample_boundary(s, count, seed)) out.push_back(bp.point);
            return out;
          },
          py::arg("count"), py::arg("seed") = 0)
      .def("interior_point", [](const ConvexSet& s) { return interior_point(s); })
      .def("to_json", [](const ConvexSet& s) { return set_to_json(s).dump(); });

  m.def("hpolyhedron", [](const Matrix& g, const Vector& b) { return ConvexSet(HPolyhedron(g, b)); });
  m.def("vpolytope", [](const Matrix& v) { return ConvexSet(VPolytope(rows_to_columns(v))); },
        "vertices as rows");
  m.def("vcone", [](const Matrix& r) { return ConvexSet(VCone(rows_to_columns(r))); }, "rays as rows");
  m.def("ellipsoid", [](const Matrix& q) { return ConvexSet(Ellipsoid(q)); });
  m.def(
      "lorenz",
      [](const Matrix& q, std::optional<Vector> axis) { return ConvexSet(LorenzCone(q, axis)); },
      py::arg("Q"), py::arg("axis") = py::none());
  m.def(
      "orthant",
      [](Eigen::Index n, bool rays) { return rays ? ConvexSet::orthant_rays(n) : ConvexSet::orthant(n); },
      py::arg("n"), py::arg("rays") = false);
  m.def("set_from_json", [](const std::string& text) { return set_from_json(Json::parse(text)); });

  py::class_<DynamicalSystem>(m, "DynamicalSystem")
      .def_property_readonly("dim", &DynamicalSystem::dim)
      .def_property_readonly("is_linear", &DynamicalSystem::is_linear)
      .def("__call__", [](const DynamicalSystem& s, double t, const Vector& x) { return s(t, x); });
  m.def("linear", [](const Matrix& a) { return DynamicalSystem::linear(a); });
  m.def("expression", [](const std::vector<std::string>& f) { return expression_system(f); });

  m.def(
      "check_json",
      [](const ConvexSet& s, const DynamicalSystem& sys, int samples, std::uint64_t seed, double t0) {
        CheckOptions o;
        o.samples = samples;
        o.seed = seed;
        o.t0 = t0;
        return verdict_json(check(s, sys, o));
      },
      py::arg("set"), py::arg("system"), py::arg("samples") = 10000, py::arg("seed") = 0,
      py::arg("t0") = 0.0);

  m.def("tangent_json", [](const ConvexSet& s, const Vector& x) { return to_json(tangent_at(s, x)).dump(); });
  m.def("cone_contains_at", [](const ConvexSet& s, const Vector& x, const Vector& y, double tol) {
    return cone_contains(tangent_at(s, x), y, tol);
  }, py::arg("set"), py::arg("x"), py::arg("y"), py::arg("tol") = 1e-8);

  m.def("lp_feasible_json", [](const Matrix& vertices, const Vector& f, int i) {
    return opt_json(lp_feasible(LPFeasibilityProblem::for_vertex(rows_to_columns(vertices), f, i)));
  }, "vertex LP; vertices as rows");
  m.def("qp_nearest_json", [](const Matrix& vertices, const Vector& f, int i) {
    return opt_json(qp_nearest(QPProblem::for_vertex(rows_to_columns(vertices), f, i)));
  }, "nearest-combination QP; vertices as rows");

  m.def(
      "integrate",
      [](const DynamicalSystem& sys, const Vector& x0, double t0, double horizon, double step) {
        const Trajectory tr = integrate(sys, x0, t0, horizon, step);
        Matrix states(static_cast<Eigen::Index>(tr.states.size()), sys.dim());
        for (std::size_t k = 0; k < tr.states.size(); ++k) {
          states.row(static_cast<Eigen::Index>(k)) = tr.states[k].transpose();
        }
        return py::make_tuple(tr.times, states, tr.diverged);
      },
      py::arg("system"), py::arg("x0"), py::arg("t0") = 0.0, py::arg("horizon") = 10.0,
      py::arg("step") = 1e-3);

  m.def(
      "falsify_json",
      [](const ConvexSet& s, const DynamicalSystem& sys, int starts, double horizon, double step,
         std::uint64_t seed) {
        FalsifyOptions o;
        o.starts = starts;
        o.horizon = horizon;
        o.step = step;
        o.seed = seed;
        const auto exit = falsify(s, sys, o);
        return exit ? to_json(*exit).dump() : std::string("null");
      },
      py::arg("set"), py::arg("system"), py::arg("starts") = 100, py::arg("horizon") = 10.0,
      py::arg("step") = 1e-3, py::arg("seed") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
