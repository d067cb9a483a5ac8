#include "nagumo/io.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "nagumo/error.hpp"
#include "nagumo/expression.hpp"

namespace nagumo {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(path + "/" + key, "missing field");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) bad(path, "expected a string");
  return j.get<std::string>();
}

std::vector<Vector> points_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a nonempty array of points");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(vector_from_json(j[i], path + "/" + std::to_string(i)));
    if (out.back().size() != out.front().size()) {
      bad(path + "/" + std::to_string(i), "dimension differs from the first point");
    }
  }
  return out;
}

// Re-raise construction failures with the field path attached.
template <class F>
auto with_path(const std::string& path, F&& make) -> decltype(make()) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw Error(e.code(), path + ": " + e.message());
  }
}

struct NamedTolerance {
  const char* name;
  double Tolerances::*field;
};

constexpr NamedTolerance kTolerances[] = {
    {"singular_pivot", &Tolerances::singular_pivot},
    {"spd_pivot", &Tolerances::spd_pivot},
    {"symmetry", &Tolerances::symmetry},
    {"jacobi_offdiag", &Tolerances::jacobi_offdiag},
    {"inertia_zero", &Tolerances::inertia_zero},
    {"boundary_band", &Tolerances::boundary_band},
    {"distinct_vertices", &Tolerances::distinct_vertices},
    {"min_ray_norm", &Tolerances::min_ray_norm},
    {"cone_membership", &Tolerances::cone_membership},
    {"lp_feasibility", &Tolerances::lp_feasibility},
    {"lp_residual", &Tolerances::lp_residual},
    {"sign_slack", &Tolerances::sign_slack},
    {"pivot", &Tolerances::pivot},
    {"reduced_cost", &Tolerances::reduced_cost},
    {"kkt", &Tolerances::kkt},
    {"dual_check", &Tolerances::dual_check},
    {"facet_optimum", &Tolerances::facet_optimum},
    {"metzler", &Tolerances::metzler},
    {"spectral", &Tolerances::spectral},
    {"bounding_box", &Tolerances::bounding_box},
    {"eta_search", &Tolerances::eta_search},
    {"exit_band", &Tolerances::exit_band},
    {"inward_push", &Tolerances::inward_push},
    {"divergence", &Tolerances::divergence},
};

Json tolerances_to_json(const Tolerances& t) {
  Json j = Json::object();
  for (const auto& nt : kTolerances) j[nt.name] = t.*nt.field;
  j["jacobi_sweeps"] = t.jacobi_sweeps;
  j["facet_rejections"] = t.facet_rejections;
  return j;
}

Tolerances tolerances_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  Tolerances t;
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "/" + key;
    if (key == "jacobi_sweeps") {
      t.jacobi_sweeps = integer(value, p);
      continue;
    }
    if (key == "facet_rejections") {
      t.facet_rejections = integer(value, p);
      continue;
    }
    bool known = false;
    for (const auto& nt : kTolerances) {
      if (key == nt.name) {
        const double v = number(value, p);
        if (!(v > 0.0)) bad(p, "tolerance must be positive");
        t.*nt.field = v;
        known = true;
      }
    }
    if (!known) bad(p, "unknown tolerance");
  }
  return t;
}

}  // namespace

Vector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a nonempty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number(j[i], path + "/" + std::to_string(i));
  }
  return v;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) bad(path, "expected a nonempty array of rows");
  const auto first = vector_from_json(j[0], path + "/0");
  Matrix m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    const Vector row = vector_from_json(j[i], p);
    if (row.size() != first.size()) bad(p, "row length differs from row 0");
    m.row(static_cast<Eigen::Index>(i)) = row;
  }
  return m;
}

Json to_json(const Vector& v) {
  Json j = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) j.push_back(v(k));
  return j;
}

Json to_json(const Matrix& m) {
  Json j = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) j.push_back(to_json(Vector(m.row(i).transpose())));
  return j;
}

ConvexSet set_from_json(const Json& j, const std::string& path) {
  const std::string type = text(field(j, "type", path), path + "/type");
  if (type == "hpolyhedron") {
    Matrix g = matrix_from_json(field(j, "G", path), path + "/G");
    Vector b = vector_from_json(field(j, "b", path), path + "/b");
    if (b.size() != g.rows()) bad(path + "/b", "length must equal the number of rows of G");
    return with_path(path, [&] { return ConvexSet(HPolyhedron(g, b)); });
  }
  if (type == "vpolytope") {
    const auto pts = points_from_json(field(j, "vertices", path), path + "/vertices");
    return with_path(path + "/vertices", [&] { return ConvexSet(VPolytope(pts)); });
  }
  if (type == "vcone") {
    const auto rays = points_from_json(field(j, "rays", path), path + "/rays");
    return with_path(path + "/rays", [&] { return ConvexSet(VCone(rays)); });
  }
  if (type == "ellipsoid") {
    Matrix q = matrix_from_json(field(j, "Q", path), path + "/Q");
    if (q.rows() != q.cols()) bad(path + "/Q", "must be square");
    return with_path(path + "/Q", [&] { return ConvexSet(Ellipsoid(q)); });
  }
  if (type == "lorenz") {
    Matrix q = matrix_from_json(field(j, "Q", path), path + "/Q");
    if (q.rows() != q.cols()) bad(path + "/Q", "must be square");
    std::optional<Vector> axis;
    if (j.contains("axis")) axis = vector_from_json(j["axis"], path + "/axis");
    return with_path(path + "/Q", [&] { return ConvexSet(LorenzCone(q, axis)); });
  }
  if (type == "orthant") {
    const int n = integer(field(j, "n", path), path + "/n");
    if (n < 1) bad(path + "/n", "must be at least 1");
    std::string form = "halfspaces";
    if (j.contains("form")) form = text(j["form"], path + "/form");
    if (form == "halfspaces") return ConvexSet::orthant(n);
    if (form == "rays") return ConvexSet::orthant_rays(n);
    bad(path + "/form", "expected \"halfspaces\" or \"rays\"");
  }
  bad(path + "/type", "unknown set type \"" + type + "\"");
}

Json set_to_json(const ConvexSet& s) {
  if (s.is_orthant()) {
    return {{"type", "orthant"},
            {"n", s.dim()},
            {"form", s.kind() == SetKind::VCone ? "rays" : "halfspaces"}};
  }
  switch (s.kind()) {
    case SetKind::HPolyhedron: {
      const auto& p = s.as<HPolyhedron>();
      return {{"type", "hpolyhedron"}, {"G", to_json(p.normals())}, {"b", to_json(p.offsets())}};
    }
    case SetKind::VPolytope:
      return {{"type", "vpolytope"},
              {"vertices", to_json(Matrix(s.as<VPolytope>().vertices().transpose()))}};
    case SetKind::VCone:
      return {{"type", "vcone"}, {"rays", to_json(Matrix(s.as<VCone>().rays().transpose()))}};
    case SetKind::Ellipsoid:
      return {{"type", "ellipsoid"}, {"Q", to_json(s.as<Ellipsoid>().shape())}};
    case SetKind::LorenzCone: {
      const auto& c = s.as<LorenzCone>();
      return {{"type", "lorenz"}, {"Q", to_json(c.shape())}, {"axis", to_json(c.axis())}};
    }
  }
  return Json();
}

DynamicalSystem system_from_json(const Json& j, Eigen::Index dim, const std::string& path) {
  const std::string type = text(field(j, "type", path), path + "/type");
  if (type == "linear") {
    Matrix a = matrix_from_json(field(j, "A", path), path + "/A");
    if (a.rows() != dim || a.cols() != dim) {
      bad(path + "/A", "must be " + std::to_string(dim) + "x" + std::to_string(dim) +
                           " to match the set");
    }
    return DynamicalSystem::linear(a);
  }
  if (type == "expression") {
    const Json& f = field(j, "formulas", path);
    const std::string p = path + "/formulas";
    if (!f.is_array()) bad(p, "expected an array of strings");
    if (static_cast<Eigen::Index>(f.size()) != dim) {
      bad(p, "need one formula per coordinate (" + std::to_string(dim) + ")");
    }
    std::vector<std::string> formulas;
    for (std::size_t i = 0; i < f.size(); ++i) {
      formulas.push_back(text(f[i], p + "/" + std::to_string(i)));
      try {
        Expression::parse(formulas.back(), static_cast<int>(dim));
      } catch (const Error& e) {
        bad(p + "/" + std::to_string(i), e.message());
      }
    }
    return expression_system(formulas);
  }
  bad(path + "/type", "unknown system type \"" + type + "\"");
}

ProblemOptions options_from_json(const Json& j, const std::string& path) {
  ProblemOptions o;
  if (j.is_null()) return o;
  if (!j.is_object()) bad(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string p = path + "/" + key;
    if (key == "t0") {
      o.t0 = number(value, p);
    } else if (key == "n_samples") {
      o.samples = integer(value, p);
      if (o.samples < 1) bad(p, "must be at least 1");
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) bad(p, "expected a nonnegative integer");
      o.seed = value.get<std::uint64_t>();
    } else if (key == "horizon") {
      o.horizon = number(value, p);
      if (!(o.horizon > 0.0)) bad(p, "must be positive");
    } else if (key == "step") {
      o.step = number(value, p);
      if (!(o.step > 0.0)) bad(p, "must be positive");
    } else if (key == "n_starts") {
      o.starts = integer(value, p);
      if (o.starts < 1) bad(p, "must be at least 1");
    } else if (key == "tolerances") {
      o.tol = tolerances_from_json(value, p);
    } else {
      bad(p, "unknown option");
    }
  }
  if (o.horizon < o.step) bad(path + "/horizon", "must be at least the step");
  return o;
}

Json options_to_json(const ProblemOptions& o) {
  return {{"t0", o.t0},           {"n_samples", o.samples}, {"seed", o.seed},
          {"horizon", o.horizon}, {"step", o.step},         {"n_starts", o.starts},
          {"tolerances", tolerances_to_json(o.tol)}};
}

Problem problem_from_json(const Json& j) {
  if (!j.is_object()) bad("", "expected a JSON object");
  const std::string schema = text(field(j, "schema", ""), "/schema");
  if (schema != kSchema) bad("/schema", "expected \"" + std::string(kSchema) + "\"");
  ConvexSet set = set_from_json(field(j, "set", ""), "/set");
  DynamicalSystem system = system_from_json(field(j, "system", ""), set.dim(), "/system");
  ProblemOptions options = options_from_json(j.contains("options") ? j["options"] : Json(),
                                             "/options");
  const bool expression = !system.is_linear();
  return Problem{std::move(set), std::move(system), options, expression};
}

Problem load_problem(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::ParseError, file + ": cannot open");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, file + ": malformed JSON (" + e.what() + ")");
  }
  return problem_from_json(j);
}

Json to_json(const Certificate& c) {
  return std::visit(
      [](const auto& cert) -> Json {
        using T = std::decay_t<decltype(cert)>;
        if constexpr (std::is_same_v<T, MetzlerCertificate>) {
          return {{"kind", "metzler"}, {"min_offdiag", cert.min_offdiag}};
        } else if constexpr (std::is_same_v<T, FacetCertificate>) {
          Json facets = Json::array();
          for (const FacetBound& f : cert.facets) {
            Json e = {{"row", f.row}, {"empty", f.empty}};
            if (!f.empty) {
              e["optimum"] = f.optimum;
              e["on_box"] = f.on_box;
              e["argmax"] = to_json(f.argmax);
            }
            facets.push_back(e);
          }
          return {{"kind", "facet-optima"}, {"facets", facets}};
        } else if constexpr (std::is_same_v<T, GeneratorCertificate>) {
          Json coeffs = Json::array();
          for (const Vector& a : cert.coefficients) coeffs.push_back(to_json(a));
          return {{"kind", cert.rays ? "ray-coefficients" : "vertex-coefficients"},
                  {"coefficients", coeffs},
                  {"residuals", cert.residuals}};
        } else {
          return {{"kind", "spectral"},
                  {"eta", cert.eta},
                  {"lambda_max", cert.lambda_max},
                  {"witness", to_json(cert.witness)}};
        }
      },
      c);
}

Json to_json(const Counterexample& c) {
  return {{"point", to_json(c.point)}, {"violation", c.violation}, {"detail", c.detail}};
}

Json to_json(const TangentCone& t) {
  Json j = {{"kind", std::string(to_string(t.kind))}, {"dim", t.dim}};
  switch (t.kind) {
    case ConeKind::Halfspaces:
      j["normals"] = to_json(t.normals);
      break;
    case ConeKind::Generated:
      j["generators"] = to_json(Matrix(t.generators.transpose()));
      j["free_generator"] = t.free_generator >= 0 ? Json(t.free_generator) : Json();
      break;
    case ConeKind::QuadraticHalfspace:
      j["q_normal"] = to_json(t.q_normal);
      break;
    case ConeKind::Lorenz:
      j["Q"] = to_json(t.lorenz_shape);
      j["axis"] = to_json(t.lorenz_axis);
      break;
    case ConeKind::FullSpace:
      break;
  }
  return j;
}

Json to_json(const Exit& e) {
  return {{"start_index", e.start_index},
          {"start", to_json(e.start)},
          {"exit_point", to_json(e.exit_point)},
          {"t_exit", e.t_exit}};
}

Json report_to_json(const Report& r) {
  Json j = {{"schema", r.schema},
            {"tool_version", r.tool_version},
            {"command", r.command},
            {"decision", r.decision},
            {"method", r.method},
            {"certificate", r.certificate},
            {"counterexample", r.counterexample},
            {"result", r.result},
            {"warnings", r.warnings},
            {"options", r.options}};
  if (r.timing) j["timing"] = *r.timing;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.schema = text(field(j, "schema", ""), "/schema");
  r.tool_version = text(field(j, "tool_version", ""), "/tool_version");
  r.command = text(field(j, "command", ""), "/command");
  r.decision = text(field(j, "decision", ""), "/decision");
  r.method = text(field(j, "method", ""), "/method");
  r.certificate = field(j, "certificate", "");
  r.counterexample = field(j, "counterexample", "");
  r.result = field(j, "result", "");
  const Json& w = field(j, "warnings", "");
  if (!w.is_array()) bad("/warnings", "expected an array");
  for (std::size_t i = 0; i < w.size(); ++i) {
    r.warnings.push_back(text(w[i], "/warnings/" + std::to_string(i)));
  }
  r.options = field(j, "options", "");
  if (j.contains("timing")) r.timing = j["timing"];
  return r;
}

}  // namespace nagumo
