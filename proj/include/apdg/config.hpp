#ifndef APDG_CONFIG_HPP
#define APDG_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "apdg/mesh.hpp"
#include "apdg/projection.hpp"
#include "apdg/simulation.hpp"

namespace apdg {

// A coefficient or initial-data function chosen by name plus numeric parameters:
//   zero | constant c | polynomial c0 c1 ... | step x0 left right (left for x <= x0)
//   | sine A k phi | cosine A k phi        (A sin(k x + phi), A cos(k x + phi))
struct FunctionSpec {
  std::string kind = "zero";
  std::vector<double> params;

  static FunctionSpec parse(const std::string& text);
  static FunctionSpec constant(double c) { return {"constant", {c}}; }
  std::string to_string() const;
  ScalarFunction to_function() const;
  bool operator==(const FunctionSpec&) const = default;
};

// g(x, v): zero | v_times <function>
struct KineticSpec {
  bool zero = true;
  FunctionSpec factor;

  static KineticSpec parse(const std::string& text);
  std::string to_string() const;
  KineticFunction to_function() const;
  bool operator==(const KineticSpec&) const = default;
};

struct ReferenceSettings {
  enum class Solver { none, kinetic, diffusion };
  Solver solver = Solver::none;
  double dx = 1e-3;
  // kinetic: dt = dt_factor eps dx; diffusion: dt = dt_factor dx^2
  double dt_factor = 0.5;
  bool operator==(const ReferenceSettings&) const = default;
};

struct RunConfig {
  int order = 1;
  std::string velocity = "slab16";  // slab16 | telegraph
  double epsilon = 1.0;
  std::vector<MeshSegment> segments{{0.0, 1.0, 10}};
  BoundaryKind boundary = BoundaryKind::periodic;
  double f_left = 0.0;
  double f_right = 0.0;
  double penalty = 1.0;
  FunctionSpec sigma_s = FunctionSpec::constant(1.0);
  FunctionSpec sigma_a;
  FunctionSpec source;
  std::optional<double> sigma_m;
  FunctionSpec rho0;
  KineticSpec g0;
  double final_time = 1.0;
  DtPolicy dt;
  int points_per_cell = 4;
  ReferenceSettings reference;

  bool operator==(const RunConfig& other) const;
};

// Parses `key = value` lines grouped under `[section]` headers; `#` starts a
// comment. Missing keys keep their defaults; unknown sections or keys, duplicate
// keys and invalid values throw ConfigError naming the line.
RunConfig parse_run_config(const std::string& text);
RunConfig parse_run_config(const std::string& text, RunConfig base);
RunConfig load_run_config(const std::string& path);
// Canonical text; parse_run_config(format_run_config(c)) == c.
std::string format_run_config(const RunConfig& config);
// "section.key=value"
void apply_override(RunConfig& config, const std::string& assignment);
void validate(const RunConfig& config);

std::vector<std::string> preset_names();
// Throws ConfigError for an unknown name.
RunConfig preset(const std::string& name);

VelocityQuadrature make_quadrature(const std::string& velocity);
ProblemSpec to_problem(const RunConfig& config);

}  // namespace apdg

#endif
