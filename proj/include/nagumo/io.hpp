#ifndef NAGUMO_IO_HPP
#define NAGUMO_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nagumo/checkers.hpp"
#include "nagumo/config.hpp"
#include "nagumo/dynamics.hpp"
#include "nagumo/sets.hpp"
#include "nagumo/system.hpp"
#include "nagumo/tangent.hpp"

namespace nagumo {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "nagumo/1";
inline constexpr const char* kToolVersion = "1.0.0";

struct ProblemOptions {
  double t0 = 0.0;
  int samples = 10000;
  std::uint64_t seed = 0;
  double horizon = 10.0;
  double step = 1e-3;
  int starts = 100;
  Tolerances tol = default_tolerances();
};

struct Problem {
  ConvexSet set;
  DynamicalSystem system;
  ProblemOptions options;
  bool expression = false;  // system given as formulas
};

// Schema errors are ParseError with the JSON pointer of the offending
// field at the front of the message, e.g. "/set/Q/1/0: expected a number".
ConvexSet set_from_json(const Json& j, const std::string& path = "/set");
Json set_to_json(const ConvexSet& s);

DynamicalSystem system_from_json(const Json& j, Eigen::Index dim,
                                 const std::string& path = "/system");
ProblemOptions options_from_json(const Json& j, const std::string& path = "/options");
Json options_to_json(const ProblemOptions& o);

Problem problem_from_json(const Json& j);
// ParseError if the file is unreadable or not JSON.
Problem load_problem(const std::string& file);

Vector vector_from_json(const Json& j, const std::string& path);
Matrix matrix_from_json(const Json& j, const std::string& path);
Json to_json(const Vector& v);
Json to_json(const Matrix& m);

Json to_json(const Certificate& c);
Json to_json(const Counterexample& c);
Json to_json(const TangentCone& t);
Json to_json(const Exit& e);

// Everything a command prints. `timing` holds milliseconds per phase and is
// left out of the serialized form when absent.
struct Report {
  std::string schema = kSchema;
  std::string tool_version = kToolVersion;
  std::string command;
  std::string decision;
  std::string method;
  Json certificate;
  Json counterexample;
  Json result;
  std::vector<std::string> warnings;
  Json options;
  std::optional<Json> timing;

  bool operator==(const Report&) const = default;
};

Json report_to_json(const Report& r);
Report report_from_json(const Json& j);

}  // namespace nagumo

#endif  // NAGUMO_IO_HPP
