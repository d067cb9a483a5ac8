#include "nagumo/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "nagumo/checkers.hpp"
#include "nagumo/dynamics.hpp"
#include "nagumo/error.hpp"
#include "nagumo/io.hpp"
#include "nagumo/solvers.hpp"
#include "nagumo/tangent.hpp"

namespace nagumo {

namespace {

struct Flags {
  std::string file;
  std::string point;
  std::optional<double> tolerance;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<double> horizon;
  std::optional<double> step;
  std::optional<int> starts;
  bool no_timing = false;
  std::string output;
  std::string csv;
};

class Stopwatch {
 public:
  double lap_ms() {
    const auto now = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
    return ms;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("file", f.file, "problem file (JSON)")->required();
  cmd->add_option("--tolerance", f.tolerance,
                  "boundary band and tangent-cone membership tolerance");
  cmd->add_option("--seed", f.seed, "seed for boundary sampling");
  cmd->add_option("--samples", f.samples, "boundary samples for sampled checks");
  cmd->add_option("--horizon", f.horizon, "integration horizon");
  cmd->add_option("--step", f.step, "RK4 step");
  cmd->add_option("--starts", f.starts, "falsification starts");
  cmd->add_flag("--no-timing", f.no_timing, "leave timing out of the report");
  cmd->add_option("--output", f.output, "write the JSON report here instead of stdout");
}

Problem load(const Flags& f) {
  Problem p = load_problem(f.file);
  ProblemOptions& o = p.options;
  if (f.tolerance) {
    if (!(*f.tolerance > 0.0)) throw Error(ErrorCode::ParseError, "--tolerance: must be positive");
    o.tol.boundary_band = *f.tolerance;
    o.tol.cone_membership = *f.tolerance;
  }
  if (f.seed) o.seed = *f.seed;
  if (f.samples) {
    if (*f.samples < 1) throw Error(ErrorCode::ParseError, "--samples: must be at least 1");
    o.samples = *f.samples;
  }
  if (f.horizon) o.horizon = *f.horizon;
  if (f.step) o.step = *f.step;
  if (f.starts) {
    if (*f.starts < 1) throw Error(ErrorCode::ParseError, "--starts: must be at least 1");
    o.starts = *f.starts;
  }
  if (!(o.step > 0.0) || !(o.horizon >= o.step)) {
    throw Error(ErrorCode::ParseError, "--step/--horizon: need 0 < step <= horizon");
  }
  return p;
}

FalsifyOptions falsify_options(const ProblemOptions& o) {
  FalsifyOptions f;
  f.starts = o.starts;
  f.horizon = o.horizon;
  f.step = o.step;
  f.seed = o.seed;
  f.t0 = o.t0;
  f.tol = o.tol;
  return f;
}

// How far x lies outside s.
double outside_excess(const ConvexSet& s, const Vector& x, const Tolerances& tol) {
  switch (s.kind()) {
    case SetKind::HPolyhedron: {
      const auto& p = s.as<HPolyhedron>();
      return (p.normals() * x - p.offsets()).maxCoeff();
    }
    case SetKind::VPolytope:
      return project_convex_hull(s.as<VPolytope>().vertices(), x, tol).distance;
    case SetKind::VCone:
      return project_conic_hull(s.as<VCone>().rays(), x, tol).distance;
    case SetKind::Ellipsoid:
      return x.dot(s.as<Ellipsoid>().shape() * x) - 1.0;
    case SetKind::LorenzCone: {
      const auto& c = s.as<LorenzCone>();
      return std::max(x.dot(c.shape() * x), x.dot(c.shape() * c.axis()));
    }
  }
  return 0.0;
}

int emit(const Report& r, const Flags& f, std::ostream& out, std::ostream& err,
         const std::string& summary, int code) {
  const std::string body = report_to_json(r).dump(2) + "\n";
  if (f.output.empty()) {
    out << body;
  } else {
    std::ofstream file(f.output);
    if (!file) {
      err << "nagumo: cannot write " << f.output << "\n";
      return kExitInputError;
    }
    file << body;
  }
  err << summary << "\n";
  return code;
}

int decision_code(Decision d) {
  switch (d) {
    case Decision::Invariant: return kExitInvariant;
    case Decision::NotInvariant: return kExitNotInvariant;
    case Decision::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

int cmd_check(const Flags& f, std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  Json timing = Json::object();
  const Problem p = load(f);
  timing["parse"] = clock.lap_ms();

  CheckOptions opts;
  opts.t0 = p.options.t0;
  opts.samples = p.options.samples;
  opts.seed = p.options.seed;
  opts.tol = p.options.tol;
  Verdict v = check(p.set, p.system, opts);
  timing["check"] = clock.lap_ms();

  Report r;
  r.command = "check";
  Json result = Json::object();
  result["set"] = std::string(to_string(p.set.kind()));
  result["system"] = p.system.label();
  if (v.samples > 0) result["samples"] = v.samples;

  if (p.expression && v.decision == Decision::Unknown) {
    const auto exit = falsify(p.set, p.system, falsify_options(p.options));
    timing["falsify"] = clock.lap_ms();
    v.method += "+falsify";
    result["exit"] = exit ? to_json(*exit) : Json();
    if (exit) {
      v.decision = Decision::NotInvariant;
      v.counterexample = Counterexample{
          exit->start, outside_excess(p.set, exit->exit_point, opts.tol),
          "trajectory from this point leaves the set at t = " + std::to_string(exit->t_exit)};
    }
  }

  r.decision = std::string(to_string(v.decision));
  r.method = v.method;
  if (v.certificate) r.certificate = to_json(*v.certificate);
  if (v.counterexample) r.counterexample = to_json(*v.counterexample);
  r.result = result;
  r.warnings = v.warnings;
  r.options = options_to_json(p.options);
  if (!f.no_timing) r.timing = timing;
  return emit(r, f, out, err, "check: " + r.decision + " (" + r.method + ")",
              decision_code(v.decision));
}

int cmd_falsify(const Flags& f, std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  Json timing = Json::object();
  const Problem p = load(f);
  timing["parse"] = clock.lap_ms();
  const FalsifyOptions fo = falsify_options(p.options);
  const auto exit = falsify(p.set, p.system, fo);
  timing["falsify"] = clock.lap_ms();

  if (!f.csv.empty()) {
    const Vector start =
        exit ? exit->start : sample_boundary(p.set, 1, fo.seed, fo.tol).front().point;
    std::ofstream csv(f.csv);
    if (!csv) throw Error(ErrorCode::ParseError, "--csv: cannot write " + f.csv);
    write_csv(csv, integrate(p.system, start, fo.t0, fo.horizon, fo.step, fo.tol));
  }

  Report r;
  r.command = "falsify";
  r.decision = exit ? "ExitFound" : "NoExit";
  r.method = "rk4";
  r.result = {{"exit", exit ? to_json(*exit) : Json()}, {"starts", fo.starts}};
  r.options = options_to_json(p.options);
  if (!f.no_timing) r.timing = timing;
  const std::string summary =
      exit ? "falsify: start " + std::to_string(exit->start_index) + " leaves the set at t = " +
                 std::to_string(exit->t_exit)
           : "falsify: no exit found from " + std::to_string(fo.starts) + " starts";
  return emit(r, f, out, err, summary, exit ? kExitNotInvariant : kExitInvariant);
}

int cmd_tangent(const Flags& f, std::ostream& out, std::ostream& err) {
  Stopwatch clock;
  Json timing = Json::object();
  const Problem p = load(f);
  Json point_json;
  try {
    point_json = Json::parse(f.point);
  } catch (const Json::parse_error&) {
    throw Error(ErrorCode::ParseError, "/point: malformed JSON vector");
  }
  const Vector x = vector_from_json(point_json, "/point");
  if (x.size() != p.set.dim()) {
    throw Error(ErrorCode::ParseError, "/point: dimension " + std::to_string(x.size()) +
                                           " differs from the set's " +
                                           std::to_string(p.set.dim()));
  }
  timing["parse"] = clock.lap_ms();

  Report r;
  r.command = "tangent";
  r.method = std::string(to_string(p.set.kind()));
  r.options = options_to_json(p.options);
  const Membership m = membership(p.set, x, p.options.tol);
  if (m != Membership::Boundary) {
    r.decision = std::string(to_string(m));
    r.result = {{"point", to_json(x)}};
    if (!f.no_timing) r.timing = timing;
    return emit(r, f, out, err, "tangent: point is " + r.decision + ", not on the boundary",
                kExitNotBoundary);
  }
  const TangentCone t = tangent_at(p.set, x, p.options.tol);
  timing["tangent"] = clock.lap_ms();
  r.decision = "Boundary";
  r.result = {{"point", to_json(x)}, {"cone", to_json(t)}};
  if (!f.no_timing) r.timing = timing;
  return emit(r, f, out, err, "tangent: " + std::string(to_string(t.kind)) + " cone", 0);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive-invariance checks for convex sets under continuous dynamics", "nagumo"};
  app.require_subcommand(1);
  Flags flags;
  CLI::App* check_cmd = app.add_subcommand("check", "decide invariance of the problem's set");
  add_common(check_cmd, flags);
  CLI::App* falsify_cmd = app.add_subcommand("falsify", "search for trajectories that leave");
  add_common(falsify_cmd, flags);
  falsify_cmd->add_option("--csv", flags.csv, "dump the witness trajectory as CSV");
  CLI::App* tangent_cmd = app.add_subcommand("tangent", "print the tangent cone at a point");
  add_common(tangent_cmd, flags);
  tangent_cmd->add_option("point", flags.point, "boundary point as a JSON array")->required();
  CLI::App* version_cmd = app.add_subcommand("version", "print the tool version");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  }

  try {
    if (version_cmd->parsed()) {
      out << "nagumo " << kToolVersion << " (schema " << kSchema << ")\n";
      return 0;
    }
    if (check_cmd->parsed()) return cmd_check(flags, out, err);
    if (falsify_cmd->parsed()) return cmd_falsify(flags, out, err);
    if (tangent_cmd->parsed()) return cmd_tangent(flags, out, err);
  } catch (const Error& e) {
    err << "nagumo: " << e.what() << "\n";
    return is_numerical_failure(e.code()) ? kExitNumericalFailure : kExitInputError;
  } catch (const std::exception& e) {
    err << "nagumo: internal error: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  return kExitInputError;
}

}  // namespace nagumo
