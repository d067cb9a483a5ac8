#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "nagumo/checkers.hpp"
#include "nagumo/cli.hpp"
#include "nagumo/error.hpp"
#include "nagumo/expression.hpp"
#include "nagumo/io.hpp"
#include "oracles.hpp"

using namespace nagumo;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string problem(const std::string& name) {
  return std::string(NAGUMO_PROBLEMS_DIR) + "/" + name;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("nagumo-test-" + std::to_string(std::random_device{}()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string parse_error_text(const std::string& json_text) {
  try {
    problem_from_json(Json::parse(json_text));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "no error for " << json_text;
  return {};
}

}  // namespace

TEST(Expression, Arithmetic) {
  const Vector x = Eigen::Vector2d(2, 3);
  EXPECT_DOUBLE_EQ(Expression::parse("x1 + 2*x2", 2).eval(0, x), 8.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(x1 - x2) / 4", 2).eval(0, x), -0.25);
  EXPECT_DOUBLE_EQ(Expression::parse("-x1^2", 2).eval(0, x), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2", 2).eval(0, x), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("1.5e1 - x2", 2).eval(0, x), 12.0);
  EXPECT_DOUBLE_EQ(Expression::parse("t * x1", 2).eval(0.5, x), 1.0);
  EXPECT_NEAR(Expression::parse("sin(x1) + cos(x2) + exp(-x1) + tanh(x2)", 2).eval(0, x),
              std::sin(2.0) + std::cos(3.0) + std::exp(-2.0) + std::tanh(3.0), 1e-15);
}

TEST(Expression, Errors) {
  for (const char* bad : {"x1 +", "x3", "x0", "(x1", "foo(x1)", "x1 x2", "", "2 ** 3"}) {
    try {
      Expression::parse(bad, 2);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError) << bad;
      EXPECT_NE(std::string(e.what()).find("offset"), std::string::npos) << e.what();
    }
  }
}

TEST(Expression, MatchesLinearFieldOnRandomPoints) {
  std::mt19937_64 rng(109);
  const Matrix a = oracle::random_matrix(rng, 3, 3, -2, 2);
  std::vector<std::string> formulas;
  for (int i = 0; i < 3; ++i) {
    std::ostringstream f;
    f.precision(17);
    for (int j = 0; j < 3; ++j) f << (j ? " + " : "") << "(" << a(i, j) << ")*x" << j + 1;
    formulas.push_back(f.str());
  }
  const DynamicalSystem sys = expression_system(formulas);
  for (int k = 0; k < 1000; ++k) {
    const Vector x = oracle::random_normal(rng, 3);
    EXPECT_LE((sys(0.0, x) - a * x).cwiseAbs().maxCoeff(), 1e-12 * (1 + (a * x).norm()));
  }
}

TEST(Io, SetRoundTrip) {
  const std::vector<std::string> docs = {
      R"({"type":"hpolyhedron","G":[[1,0],[0,1]],"b":[1,2]})",
      R"({"type":"vpolytope","vertices":[[0,0],[1,0],[0,1]]})",
      R"({"type":"vcone","rays":[[1,0],[1,1]]})",
      R"({"type":"ellipsoid","Q":[[2,0],[0,1]]})",
      R"({"type":"lorenz","Q":[[1,0,0],[0,1,0],[0,0,-1]],"axis":[0,0,1]})",
      R"({"type":"orthant","n":3})",
      R"({"type":"orthant","n":2,"form":"rays"})",
  };
  for (const std::string& d : docs) {
    const ConvexSet s = set_from_json(Json::parse(d));
    const Json once = set_to_json(s);
    EXPECT_EQ(set_to_json(set_from_json(once)), once) << d;
  }
}

TEST(Io, ReportRoundTrip) {
  Report r;
  r.command = "check";
  r.decision = "Invariant";
  r.method = "metzler";
  r.certificate = {{"kind", "metzler"}, {"min_offdiag", 0.5}};
  r.result = {{"set", "HPolyhedron"}};
  r.warnings = {"a warning"};
  r.options = options_to_json(ProblemOptions{});
  r.timing = Json{{"check", 1.25}};
  EXPECT_EQ(report_from_json(report_to_json(r)), r);
  r.timing.reset();
  EXPECT_EQ(report_from_json(Json::parse(report_to_json(r).dump(2))), r);
}

TEST(Io, FieldPathDiagnostics) {
  const std::string head = R"({"schema":"nagumo/1",)";
  EXPECT_NE(parse_error_text(head + R"("set":{"type":"ellipsoid","Q":[[1,0],["a",1]]},"system":{"type":"linear","A":[[0,0],[0,0]]}})")
                .find("/set/Q/1/0"),
            std::string::npos);
  EXPECT_NE(parse_error_text(head + R"("set":{"type":"blob"},"system":{"type":"linear","A":[[0]]}})")
                .find("/set/type"),
            std::string::npos);
  EXPECT_NE(parse_error_text(head + R"("set":{"type":"orthant","n":2},"system":{"type":"linear","A":[[0,0,0]]}})")
                .find("/system/A"),
            std::string::npos);
  EXPECT_NE(parse_error_text(head + R"("set":{"type":"orthant","n":2},"system":{"type":"linear","A":[[0,0],[0,0]]},"options":{"bogus":1}})")
                .find("/options/bogus"),
            std::string::npos);
  // Construction failures keep their own code and gain the path.
  try {
    problem_from_json(Json::parse(head + R"("set":{"type":"ellipsoid","Q":[[1,0],[0,-1]]},"system":{"type":"linear","A":[[0,0],[0,0]]}})"));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPositiveDefinite);
    EXPECT_NE(std::string(e.what()).find("/set/Q: "), std::string::npos) << e.what();
  }
  EXPECT_NE(parse_error_text(R"({"schema":"other/2"})").find("/schema"), std::string::npos);
}

TEST(Cli, CheckExamples) {
  const CliRun rot = cli({"check", problem("ellipsoid_rotation.json"), "--no-timing"});
  EXPECT_EQ(rot.code, kExitInvariant);
  const Json j = Json::parse(rot.out);
  EXPECT_EQ(j["decision"], "Invariant");
  EXPECT_NEAR(j["certificate"]["eta"].get<double>(), 0.0, 1e-12);
  EXPECT_FALSE(j.contains("timing"));

  const CliRun orth = cli({"check", problem("orthant_not_metzler.json"), "--no-timing"});
  EXPECT_EQ(orth.code, kExitNotInvariant);
  const Json k = Json::parse(orth.out);
  EXPECT_EQ(k["counterexample"]["point"], Json::parse("[0.0, 1.0]"));
  EXPECT_DOUBLE_EQ(k["counterexample"]["violation"].get<double>(), -0.5);
}

TEST(Cli, TimingPresentByDefault) {
  const CliRun r = cli({"check", problem("hpolyhedron_box.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(Json::parse(r.out).contains("timing"));
}

TEST(Cli, MalformedInput) {
  TempDir dir;
  const CliRun broken = cli({"check", dir.write("broken.json", "{\"schema\": \"nagumo/1\", ")});
  EXPECT_EQ(broken.code, kExitInputError);
  EXPECT_NE(broken.err.find("malformed JSON"), std::string::npos);

  const CliRun field = cli({"check", dir.write("field.json", R"({"schema":"nagumo/1",
      "set":{"type":"ellipsoid","Q":[[1,0],[0,"x"]]},"system":{"type":"linear","A":[[0,1],[-1,0]]}})")});
  EXPECT_EQ(field.code, kExitInputError);
  EXPECT_NE(field.err.find("/set/Q/1/1"), std::string::npos) << field.err;

  EXPECT_EQ(cli({"check", dir.path("missing.json")}).code, kExitInputError);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(cli({}).code, kExitInputError);
  EXPECT_EQ(cli({"check", problem("hpolyhedron_box.json"), "--samples", "0"}).code, kExitInputError);
}

TEST(Cli, FalsifyExamples) {
  TempDir dir;
  const std::string saddle = dir.write("saddle.json", R"({"schema":"nagumo/1",
      "set":{"type":"ellipsoid","Q":[[1,0],[0,1]]},"system":{"type":"linear","A":[[1,0],[0,-1]]}})");
  const CliRun s = cli({"falsify", saddle, "--no-timing", "--horizon", "1"});
  EXPECT_EQ(s.code, kExitNotInvariant);
  EXPECT_EQ(Json::parse(s.out)["decision"], "ExitFound");

  const std::string disk = dir.write("disk.json", R"({"schema":"nagumo/1",
      "set":{"type":"ellipsoid","Q":[[1,0],[0,1]]},"system":{"type":"linear","A":[[-1,0],[0,-1]]},
      "options":{"n_starts":100}})");
  EXPECT_EQ(cli({"falsify", disk, "--no-timing"}).code, kExitInvariant);

  const std::string point = dir.write("point.json", R"({"schema":"nagumo/1",
      "set":{"type":"vpolytope","vertices":[[0.5,0.5]]},"system":{"type":"linear","A":[[0,0],[0,0]]}})");
  EXPECT_EQ(cli({"falsify", point, "--no-timing"}).code, kExitInvariant);

  const std::string csv = dir.path("traj.csv");
  EXPECT_EQ(cli({"falsify", saddle, "--horizon", "0.01", "--step", "0.005", "--csv", csv}).code,
            kExitNotInvariant);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "t,x1,x2");
}

TEST(Cli, TangentExamples) {
  const CliRun box = cli({"tangent", problem("hpolyhedron_box.json"), "[1, 1]", "--no-timing"});
  ASSERT_EQ(box.code, 0) << box.err;
  EXPECT_EQ(Json::parse(box.out)["result"]["cone"]["normals"], Json::parse("[[1.0,0.0],[0.0,1.0]]"));

  TempDir dir;
  const std::string ell = dir.write("ell.json", R"({"schema":"nagumo/1",
      "set":{"type":"ellipsoid","Q":[[1,0],[0,4]]},"system":{"type":"linear","A":[[0,0],[0,0]]}})");
  const CliRun e = cli({"tangent", ell, "[0, 0.5]", "--no-timing"});
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(Json::parse(e.out)["result"]["cone"]["q_normal"], Json::parse("[0.0, 2.0]"));

  const CliRun inside = cli({"tangent", ell, "[0, 0]"});
  EXPECT_EQ(inside.code, kExitNotBoundary);
  EXPECT_EQ(Json::parse(inside.out)["decision"], "Inside");
  EXPECT_EQ(cli({"tangent", ell, "[0, 0.5, 1]"}).code, kExitInputError);
  EXPECT_EQ(cli({"tangent", ell, "[0, "}).code, kExitInputError);
}

TEST(Cli, ExpressionCheckRunsFalsifier) {
  const CliRun r = cli({"check", problem("ellipsoid_cubic_expression.json"), "--no-timing",
                        "--samples", "500", "--starts", "20"});
  EXPECT_EQ(r.code, kExitUnknown);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["method"], "sampled+falsify");
  EXPECT_TRUE(j["result"]["exit"].is_null());
}

TEST(Cli, OutputFileAndVersion) {
  TempDir dir;
  const std::string out = dir.path("report.json");
  const CliRun r = cli({"check", problem("hpolyhedron_box.json"), "--no-timing", "--output", out});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  EXPECT_EQ(Json::parse(in)["decision"], "Invariant");
  const CliRun v = cli({"version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kToolVersion), std::string::npos);
}

TEST(Cli, ByteIdenticalReports) {
  for (const auto& entry : fs::directory_iterator(NAGUMO_PROBLEMS_DIR)) {
    const std::string file = entry.path().string();
    const CliRun a = cli({"check", file, "--no-timing"});
    const CliRun b = cli({"check", file, "--no-timing"});
    EXPECT_EQ(a.code, b.code) << file;
    EXPECT_EQ(a.out, b.out) << file;
  }
}

TEST(Expression, SampledVerdictParityWithLinearForm) {
  std::mt19937_64 rng(127);
  CheckOptions o;
  o.samples = 400;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = oracle::random_matrix(rng, 2, 2, -2, 2);
    if (trial % 2 == 0) a = (a - a.transpose()).eval() - 0.1 * Matrix::Identity(2, 2);
    std::vector<std::string> formulas;
    for (int i = 0; i < 2; ++i) {
      std::ostringstream f;
      f.precision(17);
      f << a(i, 0) << "*x1 + " << a(i, 1) << "*x2";
      formulas.push_back(f.str());
    }
    const auto as_field = DynamicalSystem::general(2, [a](double, const Vector& x) { return Vector(a * x); });
    for (const ConvexSet& s : {ConvexSet(Ellipsoid(Matrix::Identity(2, 2))), ConvexSet::orthant(2)}) {
      const Verdict lin = check_nonlinear_sampled(s, as_field, o);
      const Verdict expr = check_nonlinear_sampled(s, expression_system(formulas), o);
      EXPECT_EQ(lin.decision, expr.decision) << a;
      if (lin.counterexample && expr.counterexample) {
        EXPECT_LE((lin.counterexample->point - expr.counterexample->point).norm(), 1e-12);
      }
    }
  }
}
