#include <numbers>

#include "apdg/config.hpp"
#include "apdg/error.hpp"

namespace apdg {

namespace {

using Solver = ReferenceSettings::Solver;

RunConfig smooth_periodic() {
  RunConfig c;
  c.order = 1;
  c.epsilon = 0.5;
  c.segments = {{0.0, 2.0 * std::numbers::pi, 10}};
  c.boundary = BoundaryKind::periodic;
  c.rho0 = {"sine", {1.0, 1.0, 0.0}};
  c.g0 = {false, {"cosine", {-1.0, 1.0, 0.0}}};
  c.final_time = 1.0;
  return c;
}

RunConfig two_material() {
  RunConfig c;
  c.epsilon = 1.0;
  c.segments = {{0.0, 1.0, 20}, {1.0, 11.0, 20}};
  c.boundary = BoundaryKind::inflow;
  c.f_left = 5.0;
  c.f_right = 0.0;
  c.sigma_s = {"step", {1.0, 0.0, 100.0}};
  c.sigma_a = {"step", {1.0, 1.0, 0.0}};
  c.final_time = 1.5;
  c.reference = {Solver::kinetic, 11.0 / 8000.0, 0.5};
  return c;
}

RunConfig varying_scattering() {
  RunConfig c;
  c.epsilon = 1e-2;
  c.segments = {{0.0, 1.0, 40}};
  c.boundary = BoundaryKind::inflow;
  c.sigma_s = {"polynomial", {1.0, 0.0, 100.0}};
  c.source = FunctionSpec::constant(1.0);
  c.final_time = 0.4;
  c.reference = {Solver::kinetic, 1.0 / 4000.0, 0.1};
  return c;
}

RunConfig inflow_slab(double epsilon) {
  RunConfig c;
  c.epsilon = epsilon;
  c.segments = {{0.0, 1.0, 40}};
  c.boundary = BoundaryKind::inflow;
  c.f_left = 1.0;
  c.f_right = 0.0;
  if (epsilon >= 1.0) {
    c.final_time = 0.4;
    c.reference = {Solver::kinetic, 1.0 / 2000.0, 0.5};
  } else {
    c.final_time = 0.25;
    c.dt.unconditional_factor = 0.25;
    c.reference = {Solver::diffusion, 1.0 / 2000.0, 0.25};
  }
  return c;
}

RunConfig riemann(bool kinetic) {
  RunConfig c;
  c.velocity = "telegraph";
  c.boundary = BoundaryKind::inflow;
  c.f_left = 2.0;
  c.f_right = 1.0;
  c.rho0 = {"step", {0.0, 2.0, 1.0}};
  c.final_time = 0.15;
  if (kinetic) {
    c.epsilon = 0.7;
    c.segments = {{-1.0, 1.0, 80}};
    c.reference = {Solver::kinetic, 1.0 / 1000.0, 0.05};
  } else {
    c.epsilon = 1e-6;
    c.segments = {{-2.0, 2.0, 160}};
    c.reference = {Solver::diffusion, 1.0 / 1000.0, 0.25};
  }
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"example1",           "example2",         "example3",          "example4-kinetic", "example4-diffusive",
          "example5-kinetic",   "example5-diffusive", "example5",        "zero"};
}

RunConfig preset(const std::string& name) {
  if (name == "example1") return smooth_periodic();
  if (name == "example2") return two_material();
  if (name == "example3") return varying_scattering();
  if (name == "example4-kinetic") return inflow_slab(1.0);
  if (name == "example4-diffusive") return inflow_slab(1e-8);
  if (name == "example5-kinetic") return riemann(true);
  if (name == "example5-diffusive" || name == "example5") return riemann(false);
  if (name == "zero") {
    RunConfig c = smooth_periodic();
    c.rho0 = {};
    c.g0 = {};
    return c;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace apdg
