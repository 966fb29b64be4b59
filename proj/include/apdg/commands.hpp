#ifndef APDG_COMMANDS_HPP
#define APDG_COMMANDS_HPP

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "apdg/config.hpp"
#include "apdg/convergence.hpp"
#include "apdg/fourier.hpp"
#include "apdg/reference.hpp"

namespace apdg {

// CSV `x,rho,j` at `points_per_cell` Gauss points of every cell.
RunResult cmd_solve(const RunConfig& config, std::ostream& out);

// CSV `N,Erho,order_rho,Eg,order_g`; order at row N compares with row N/2.
std::vector<ConvergenceRow> cmd_converge(const RunConfig& config, const std::vector<int>& levels, std::ostream& out);
// N, 2N, ..., 16N from the configured mesh.
std::vector<int> default_levels(const RunConfig& config);

struct StabilityMapOptions {
  int p = 1;
  int k = 1;
  enum class Resolution { coarse, fine, custom } resolution = Resolution::coarse;
  double spacing = 0.25;  // custom only
  int xi_samples = 0;     // 0: resolution default
  int threads = 0;
};
// coarse: spacing 1/4, 32 wave numbers; fine (CLI value "paper"): spacing 1/20, 100 wave numbers.
FourierConfig stability_config(const StabilityMapOptions& options);
GridAxis alpha_axis(const StabilityMapOptions& options);
GridAxis beta_axis(const StabilityMapOptions& options);
StabilityGrid cmd_stability_map(const StabilityMapOptions& options, std::ostream& out,
                                const std::function<void(int, int)>& progress = {});

struct EnergySummary {
  std::optional<double> theorem_dt;  // nullopt: unconditional
  double dt = 0.0;
  int steps = 0;
  double max_relative_increase = 0.0;  // max over steps of (E_{n+1} - E_n) / E_n
};
// CSV `step,t,energy`, mu = 0.
EnergySummary cmd_energy_check(const RunConfig& config, std::ostream& out);

struct ApSummary {
  double max_residual = 0.0;
  double final_residual = 0.0;
  std::optional<double> diffusion_linf;  // set when the config has a diffusion reference
};
// CSV `step,t,residual`; with [reference] solver = diffusion also compares the final rho.
ApSummary cmd_ap_check(const RunConfig& config, std::ostream& out, const std::filesystem::path& cache_dir = {});

// Reference run described by the config's [reference] section. Isotropic inflow
// gives Dirichlet data rho_L = f_left, rho_R = f_right for the diffusion solver.
// An empty cache_dir disables caching.
ReferenceSolution reference_solution(const RunConfig& config, const std::filesystem::path& cache_dir = {});

// L-infinity differences of rho and j = <v g> between a run and a reference,
// over reference nodes inside [from, to] that are not within `exclude_radius`
// of any point in `exclude_at`.
struct Comparison {
  double rho = 0.0;
  double current = 0.0;
  int nodes = 0;
};
Comparison compare_with_reference(const RunResult& run, const VelocityQuadrature& quadrature,
                                  const ReferenceSolution& reference, double from, double to,
                                  const std::vector<double>& exclude_at = {}, double exclude_radius = 0.0);

}  // namespace apdg

#endif
