#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include <gtest/gtest.h>

#include "apdg/commands.hpp"
#include "apdg/config.hpp"
#include "apdg/error.hpp"

using namespace apdg;

namespace {

struct Process {
  int code = -1;
  std::string out;
};

Process run_cli(const std::string& args) {
  const std::string cmd = std::string(APDG_CLI_PATH) + " " + args + " 2>/dev/null";
  Process p;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return p;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) p.out.append(buf, n);
  const int status = pclose(pipe);
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return p;
}

std::string error_of(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Config, EveryPresetRoundTripsThroughText) {
  for (const std::string& name : preset_names()) {
    const RunConfig c = preset(name);
    EXPECT_NO_THROW(validate(c)) << name;
    EXPECT_EQ(parse_run_config(format_run_config(c)), c) << name;
  }
  EXPECT_THROW(preset("nope"), ConfigError);
}

TEST(Config, ParsesSectionsCommentsAndSegments) {
  const RunConfig c = parse_run_config(R"(
# leading comment
[scheme]
order = 3
[model]
velocity = telegraph   # trailing comment
epsilon = 1e-4
[mesh]
segments = 0 1 4, 1 3 8
[boundary]
kind = inflow
f_left = 2
[material]
sigma_s = step 1 0 100
source = polynomial 1 0 2
[initial]
rho = sine 1 1 0
g = v_times cosine -1 1 0
[time]
final_time = 0.5
dt = fixed 0.01
[reference]
solver = kinetic
)");
  EXPECT_EQ(c.order, 3);
  EXPECT_EQ(c.velocity, "telegraph");
  EXPECT_DOUBLE_EQ(c.epsilon, 1e-4);
  ASSERT_EQ(c.segments.size(), 2u);
  EXPECT_EQ(c.segments[1].cells, 8);
  EXPECT_EQ(c.boundary, BoundaryKind::inflow);
  EXPECT_EQ(c.dt.kind, DtPolicy::Kind::fixed);
  EXPECT_EQ(c.reference.solver, ReferenceSettings::Solver::kinetic);
  EXPECT_EQ(c.g0.factor.kind, "cosine");
  const ScalarFunction s = c.sigma_s.to_function();
  EXPECT_EQ(s(0.5), 0.0);
  EXPECT_EQ(s(1.0), 0.0);  // the left value holds at x0
  EXPECT_EQ(s(1.5), 100.0);
  EXPECT_DOUBLE_EQ(c.source.to_function()(3.0), 19.0);
  const KineticFunction g = c.g0.to_function();
  EXPECT_DOUBLE_EQ(g(0.0, 0.5), -0.5);
}

TEST(Config, ErrorsNameTheLine) {
  EXPECT_NE(error_of("[scheme]\norder = 1\n[bogus]\n").find("line 3"), std::string::npos);
  EXPECT_NE(error_of("[scheme]\n\nwidth = 2\n").find("line 3: unknown key 'width'"), std::string::npos);
  EXPECT_NE(error_of("[model]\nepsilon = 1\nepsilon = 2\n").find("line 3: duplicate key"), std::string::npos);
  EXPECT_NE(error_of("[model]\nepsilon = abc\n").find("line 2"), std::string::npos);
  EXPECT_NE(error_of("order = 1\n").find("line 1"), std::string::npos);
  EXPECT_NE(error_of("[material]\nsigma_s = sine 1\n").find("takes 3 parameters"), std::string::npos);
  EXPECT_FALSE(error_of("[scheme]\norder = 4\n").empty());
  EXPECT_FALSE(error_of("[mesh]\nsegments = 0 1 4, 2 3 4\n").empty());
  EXPECT_FALSE(error_of("[mesh]\ncells = 4\nsegments = 0 1 4\n").empty());
  EXPECT_FALSE(error_of("[time]\ndt = fixed\n").empty());
}

TEST(Config, OverridesApplyOnTopOfAPreset) {
  RunConfig c = preset("example1");
  apply_override(c, "model.epsilon=1e-6");
  apply_override(c, "mesh.cells = 40");
  apply_override(c, "time.dt=fixed 0.125");
  EXPECT_DOUBLE_EQ(c.epsilon, 1e-6);
  EXPECT_EQ(c.segments.front().cells, 40);
  EXPECT_DOUBLE_EQ(c.segments.front().right, 2 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(c.dt.value, 0.125);
  EXPECT_THROW(apply_override(c, "epsilon=1"), ConfigError);
  EXPECT_THROW(apply_override(c, "model.spin=1"), ConfigError);
}

TEST(Config, PresetValues) {
  const RunConfig one = preset("example1");
  EXPECT_DOUBLE_EQ(one.epsilon, 0.5);
  EXPECT_EQ(one.boundary, BoundaryKind::periodic);
  const RunConfig two = preset("example2");
  EXPECT_EQ(two.segments.size(), 2u);
  EXPECT_DOUBLE_EQ(two.f_left, 5.0);
  EXPECT_DOUBLE_EQ(two.sigma_a.to_function()(0.5), 1.0);
  EXPECT_DOUBLE_EQ(two.sigma_s.to_function()(5.0), 100.0);
  const RunConfig three = preset("example3");
  EXPECT_DOUBLE_EQ(three.sigma_s.to_function()(0.5), 26.0);
  EXPECT_DOUBLE_EQ(three.epsilon, 1e-2);
  EXPECT_DOUBLE_EQ(preset("example4-diffusive").epsilon, 1e-8);
  const RunConfig five = preset("example5-kinetic");
  EXPECT_EQ(five.velocity, "telegraph");
  EXPECT_DOUBLE_EQ(five.rho0.to_function()(-0.5), 2.0);
  EXPECT_DOUBLE_EQ(five.rho0.to_function()(0.5), 1.0);
  EXPECT_EQ(preset("example5"), preset("example5-diffusive"));
}

TEST(Config, FunctionSpecParsing) {
  EXPECT_EQ(FunctionSpec::parse("  constant   2.5 "), FunctionSpec::constant(2.5));
  EXPECT_EQ(FunctionSpec::parse("zero").to_function()(1.0), 0.0);
  EXPECT_DOUBLE_EQ(FunctionSpec::parse("cosine 2 pi 0").to_function()(1.0), -2.0);
  EXPECT_EQ(FunctionSpec::parse(FunctionSpec::parse("polynomial 1 -2 3").to_string()),
            FunctionSpec::parse("polynomial 1 -2 3"));
  EXPECT_THROW(FunctionSpec::parse("exp 1"), ConfigError);
  EXPECT_THROW(FunctionSpec::parse("polynomial"), ConfigError);
  EXPECT_THROW(FunctionSpec::parse(""), ConfigError);
  EXPECT_THROW(KineticSpec::parse("v_squared constant 1"), ConfigError);
  EXPECT_TRUE(KineticSpec::parse("zero").zero);
}

TEST(Commands, StabilityAxesFollowTheResolution) {
  StabilityMapOptions o;
  EXPECT_EQ(alpha_axis(o).size(), 41);
  EXPECT_EQ(beta_axis(o).size(), 37);
  EXPECT_EQ(stability_config(o).xi_samples, 32);
  o.resolution = StabilityMapOptions::Resolution::fine;
  EXPECT_EQ(alpha_axis(o).size(), 201);
  EXPECT_EQ(beta_axis(o).size(), 181);
  EXPECT_EQ(stability_config(o).xi_samples, 100);
  o.resolution = StabilityMapOptions::Resolution::custom;
  o.spacing = 0.5;
  EXPECT_EQ(alpha_axis(o).size(), 21);
  o.spacing = 0.0;
  EXPECT_THROW(alpha_axis(o), ConfigError);
}

TEST(Commands, SolveWritesTheSampledProfile) {
  RunConfig c = preset("example1");
  c.final_time = 0.1;
  c.points_per_cell = 2;
  std::ostringstream out;
  cmd_solve(c, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,rho,j");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 20);
}

TEST(Commands, CompareWithReferenceExcludesWindows) {
  RunConfig c = preset("example1");
  c.order = 3;
  c.segments.front().cells = 40;
  c.final_time = 1e-6;
  std::ostringstream sink;
  const RunResult r = cmd_solve(c, sink);
  ReferenceSolution ref;
  for (int i = 0; i <= 100; ++i) {
    const double x = 2 * std::numbers::pi * i / 100.0;
    ref.x.push_back(x);
    ref.rho.push_back(std::sin(x) + (i == 50 ? 1.0 : 0.0));
    ref.current.push_back(0.0);
  }
  const Comparison all = compare_with_reference(r, make_quadrature("slab16"), ref, 0.0, 2 * std::numbers::pi);
  const Comparison cut = compare_with_reference(r, make_quadrature("slab16"), ref, 0.0, 2 * std::numbers::pi,
                                                {std::numbers::pi}, 0.1);
  EXPECT_GT(all.rho, 0.9);
  EXPECT_LT(cut.rho, 0.1);
  EXPECT_EQ(all.nodes - cut.nodes, 3);
}

TEST(Binary, ExitCodesAndOutputs) {
  Process p = run_cli("presets");
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("example4-diffusive"), std::string::npos);

  p = run_cli("show-config example3");
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(parse_run_config(p.out), preset("example3"));

  EXPECT_EQ(run_cli("solve --preset nope").code, 2);
  EXPECT_EQ(run_cli("solve --preset example1 --set model.epsilon=-1").code, 2);
  EXPECT_EQ(run_cli("solve --preset example1 --order 7").code, 2);
  EXPECT_EQ(run_cli("solve").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("solve --config /nonexistent/x.toml").code, 2);
  EXPECT_EQ(run_cli("converge --preset example1 --levels 10,30").code, 2);

  p = run_cli("solve --preset example1 --set time.final_time=0.05 --set output.points_per_cell=1");
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out.rfind("x,rho,j\n", 0), 0u);

  p = run_cli("stability-map --order 1 --resolution custom --spacing 2.5 --xi-samples 8");
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out.rfind("alpha,beta,max_modulus,stable\n", 0), 0u);
  EXPECT_EQ(std::count(p.out.begin(), p.out.end(), '\n'), 1 + 5 * 4);

  const auto cfg = std::filesystem::temp_directory_path() / ("apdg_cli_" + std::to_string(::getpid()) + ".cfg");
  {
    std::ofstream f(cfg);
    f << "[scheme]\norder = 2\n[model]\nepsilon = 0.5\nepsilon = 0.6\n";
  }
  EXPECT_EQ(run_cli("solve --config " + cfg.string()).code, 2);
  {
    std::ofstream f(cfg);
    f << format_run_config(preset("example1")) << "";
  }
  p = run_cli("energy-check --config " + cfg.string() + " --set time.final_time=0.1");
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out.rfind("step,t,energy\n", 0), 0u);
  std::filesystem::remove(cfg);
}
