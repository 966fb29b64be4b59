// Command-line front end: solve, converge, stability-map, energy-check, ap-check.
// Exit codes: 0 success, 2 configuration error, 3 solver failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "apdg/commands.hpp"
#include "apdg/config.hpp"
#include "apdg/error.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kSolverError = 3;

struct RunOptions {
  std::string config_path;
  std::string preset_name;
  std::vector<std::string> overrides;
  int order = 0;
  std::string out_path;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config_path, "config file (key = value under [section] headers)");
  cmd->add_option("--preset", o.preset_name, "named experiment preset");
  cmd->add_option("--set", o.overrides, "override, e.g. --set model.epsilon=1e-6")->take_all();
  cmd->add_option("--order", o.order, "scheme order p (DG order k = p)");
  cmd->add_option("--out", o.out_path, "output CSV path (default stdout)");
}

apdg::RunConfig resolve(const RunOptions& o) {
  if (!o.config_path.empty() && !o.preset_name.empty()) throw apdg::ConfigError("give --config or --preset, not both");
  if (o.config_path.empty() && o.preset_name.empty()) throw apdg::ConfigError("need --config <path> or --preset <name>");
  apdg::RunConfig c = o.config_path.empty() ? apdg::preset(o.preset_name) : apdg::load_run_config(o.config_path);
  for (const std::string& s : o.overrides) apdg::apply_override(c, s);
  if (o.order != 0) apdg::apply_override(c, "scheme.order=" + std::to_string(o.order));
  return c;
}

// Output goes to a temporary buffer and is written only after the command succeeds.
class Output {
 public:
  explicit Output(std::string path) : path_(std::move(path)) {}
  std::ostream& stream() { return buffer_; }
  void commit() {
    if (path_.empty()) {
      std::cout << buffer_.str();
      return;
    }
    std::ofstream f(path_);
    f << buffer_.str();
    if (!f) throw apdg::ConfigError("cannot write '" + path_ + "'");
  }

 private:
  std::string path_;
  std::ostringstream buffer_;
};

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw apdg::ConfigError("--levels must be a comma-separated list of integers");
    }
  }
  if (out.empty()) throw apdg::ConfigError("--levels is empty");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] != 2 * out[i - 1]) throw apdg::ConfigError("--levels must double from one entry to the next");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic-preserving DG solver for kinetic transport in the diffusive scaling"};
  app.require_subcommand(1);

  RunOptions solve_opts, converge_opts, energy_opts, ap_opts;
  std::string levels_text, cache_dir;
  auto* solve = app.add_subcommand("solve", "run to the final time and write x,rho,j");
  add_run_options(solve, solve_opts);
  auto* converge = app.add_subcommand("converge", "Richardson convergence table");
  add_run_options(converge, converge_opts);
  converge->add_option("--levels", levels_text, "cell counts, doubling, e.g. 10,20,40");
  auto* energy = app.add_subcommand("energy-check", "discrete energy per step");
  add_run_options(energy, energy_opts);
  auto* ap = app.add_subcommand("ap-check", "local-equilibrium residual per step, diffusion-limit comparison");
  add_run_options(ap, ap_opts);
  ap->add_option("--cache", cache_dir, "reference cache directory");

  apdg::StabilityMapOptions map_opts;
  std::string resolution = "coarse";
  std::string map_out;
  int dg_order = 0;
  auto* map = app.add_subcommand("stability-map", "Fourier stability region scan");
  map->add_option("--order", map_opts.p, "IMEX order p")->required();
  map->add_option("--dg-order", dg_order, "DG order k (default p)");
  map->add_option("--resolution", resolution, "coarse | paper | custom")
      ->check(CLI::IsMember({"coarse", "paper", "custom"}));
  map->add_option("--spacing", map_opts.spacing, "grid spacing for --resolution custom");
  map->add_option("--xi-samples", map_opts.xi_samples, "wave-number samples on [0, 2 pi)");
  map->add_option("--threads", map_opts.threads, "worker threads (default: all cores)");
  map->add_option("--out", map_out, "output CSV path (default stdout)");

  app.add_subcommand("presets", "list preset names");
  std::string show_preset;
  auto* show = app.add_subcommand("show-config", "print the canonical config of a preset");
  show->add_option("preset", show_preset)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (app.got_subcommand("presets")) {
      for (const std::string& n : apdg::preset_names()) std::cout << n << '\n';
    } else if (*show) {
      std::cout << apdg::format_run_config(apdg::preset(show_preset));
    } else if (*solve) {
      const apdg::RunConfig c = resolve(solve_opts);
      Output out(solve_opts.out_path);
      const apdg::RunResult r = apdg::cmd_solve(c, out.stream());
      out.commit();
      std::fprintf(stderr, "steps %d, dt %.6g\n", r.plan.steps, r.plan.dt);
    } else if (*converge) {
      const apdg::RunConfig c = resolve(converge_opts);
      const std::vector<int> levels = levels_text.empty() ? apdg::default_levels(c) : parse_levels(levels_text);
      Output out(converge_opts.out_path);
      apdg::cmd_converge(c, levels, out.stream());
      out.commit();
    } else if (*energy) {
      const apdg::RunConfig c = resolve(energy_opts);
      Output out(energy_opts.out_path);
      const apdg::EnergySummary s = apdg::cmd_energy_check(c, out.stream());
      out.commit();
      if (s.theorem_dt) std::fprintf(stderr, "theorem step bound %.6g, dt %.6g", *s.theorem_dt, s.dt);
      else std::fprintf(stderr, "unconditionally stable regime, dt %.6g", s.dt);
      std::fprintf(stderr, ", max relative energy increase %.3e\n", s.max_relative_increase);
    } else if (*ap) {
      const apdg::RunConfig c = resolve(ap_opts);
      Output out(ap_opts.out_path);
      const apdg::ApSummary s = apdg::cmd_ap_check(c, out.stream(), cache_dir);
      out.commit();
      std::fprintf(stderr, "max residual %.3e, final residual %.3e\n", s.max_residual, s.final_residual);
      if (s.diffusion_linf) std::fprintf(stderr, "rho vs diffusion limit, L-inf %.3e\n", *s.diffusion_linf);
    } else if (*map) {
      map_opts.k = dg_order > 0 ? dg_order : map_opts.p;
      map_opts.resolution = resolution == "paper"    ? apdg::StabilityMapOptions::Resolution::fine
                            : resolution == "custom" ? apdg::StabilityMapOptions::Resolution::custom
                                                     : apdg::StabilityMapOptions::Resolution::coarse;
      Output out(map_out);
      int last = -1;
      apdg::cmd_stability_map(map_opts, out.stream(), [&](int done, int total) {
        const int pct = 100 * done / total;
        if (pct != last && pct % 10 == 0) std::fprintf(stderr, "%d%%\n", pct);
        last = pct;
      });
      out.commit();
    }
  } catch (const apdg::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const apdg::SolverError& e) {
    std::fprintf(stderr, "solver failure: %s\n", e.what());
    return kSolverError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "failure: %s\n", e.what());
    return kSolverError;
  }
  return 0;
}
