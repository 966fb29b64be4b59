#include "apdg/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "apdg/energy.hpp"
#include "apdg/error.hpp"
#include "apdg/quadrature.hpp"
#include "apdg/stepper.hpp"
#include "apdg/timestep.hpp"

namespace apdg {

namespace {

std::string csv(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double domain_left(const RunConfig& c) { return c.segments.front().left; }
double domain_right(const RunConfig& c) { return c.segments.back().right; }

}  // namespace

RunResult cmd_solve(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = to_problem(config);
  RunResult r = run(spec);
  const Field j = current(r.state, spec.quadrature);
  const GaussRule rule = gauss_legendre(config.points_per_cell);
  const Mesh1D& mesh = r.ops.mesh;
  out << "x,rho,j\n";
  for (int i = 0; i < mesh.cells(); ++i)
    for (int q = 0; q < rule.size(); ++q) {
      const double xi = rule.nodes[q];
      out << csv(mesh.from_reference(i, xi)) << ',' << csv(r.state.rho.eval(i, xi)) << ',' << csv(j.eval(i, xi))
          << '\n';
    }
  return r;
}

std::vector<int> default_levels(const RunConfig& config) {
  int n = 0;
  for (const MeshSegment& s : config.segments) n += s.cells;
  return {n, 2 * n, 4 * n, 8 * n, 16 * n};
}

std::vector<ConvergenceRow> cmd_converge(const RunConfig& config, const std::vector<int>& levels, std::ostream& out) {
  const std::vector<ConvergenceRow> rows = richardson_table(to_problem(config), levels);
  out << "N,Erho,order_rho,Eg,order_g\n";
  for (const ConvergenceRow& r : rows)
    out << r.cells << ',' << csv(r.error_rho) << ',' << csv(r.order_rho) << ',' << csv(r.error_g) << ','
        << csv(r.order_g) << '\n';
  return rows;
}

FourierConfig stability_config(const StabilityMapOptions& o) {
  FourierConfig c;
  c.p = o.p;
  c.k = o.k;
  if (o.p < 1 || o.p > 3 || o.k < 1 || o.k > 3) throw ConfigError("stability map: p and k must be 1, 2 or 3");
  c.xi_samples = o.xi_samples > 0 ? o.xi_samples : (o.resolution == StabilityMapOptions::Resolution::fine ? 100 : 32);
  return c;
}

namespace {
double grid_spacing(const StabilityMapOptions& o) {
  switch (o.resolution) {
    case StabilityMapOptions::Resolution::fine: return 1.0 / 20.0;
    case StabilityMapOptions::Resolution::custom:
      if (!(o.spacing > 0.0)) throw ConfigError("stability map: spacing must be positive");
      return o.spacing;
    default: return 0.25;
  }
}
}  // namespace

GridAxis alpha_axis(const StabilityMapOptions& o) { return {-5.0, 5.0, grid_spacing(o)}; }
GridAxis beta_axis(const StabilityMapOptions& o) { return {-5.0, 4.0, grid_spacing(o)}; }

StabilityGrid cmd_stability_map(const StabilityMapOptions& options, std::ostream& out,
                                const std::function<void(int, int)>& progress) {
  const StabilityGrid grid =
      scan_stability(stability_config(options), alpha_axis(options), beta_axis(options), options.threads, progress);
  write_stability_csv(out, grid);
  return grid;
}

EnergySummary cmd_energy_check(const RunConfig& config, std::ostream& out) {
  const ProblemSpec spec = to_problem(config);
  EnergySummary s;
  double previous = 0.0;
  out << "step,t,energy\n";
  const RunResult r = run(spec, [&](int step, const KineticState& state, const DGOperatorSet& ops) {
    if (step == 0) {
      s.dt = plan_steps(spec, ops.mesh).dt;
      s.theorem_dt = theorem_stable_dt(spec.coefficients.epsilon, ops.sigma_m, ops.mesh.h_min(),
                                       spec.quadrature.v_inf());
    }
    const double e = energy(state, optimal_mu, s.dt, ops, spec.quadrature, spec.coefficients.epsilon);
    if (step > 0 && previous > 0.0) s.max_relative_increase = std::max(s.max_relative_increase, (e - previous) / previous);
    previous = e;
    out << step << ',' << csv(state.t) << ',' << csv(e) << '\n';
  });
  s.steps = r.plan.steps;
  return s;
}

ApSummary cmd_ap_check(const RunConfig& config, std::ostream& out, const std::filesystem::path& cache_dir) {
  const ProblemSpec spec = to_problem(config);
  ApSummary s;
  out << "step,t,residual\n";
  const RunResult r = run_with_stepper(spec, [&](int step, const KineticState& state, const ImexStepper& stepper) {
    const double res = local_equilibrium_residual(state, stepper);
    s.max_residual = std::max(s.max_residual, res);
    s.final_residual = res;
    out << step << ',' << csv(state.t) << ',' << csv(res) << '\n';
  });
  if (config.reference.solver == ReferenceSettings::Solver::diffusion) {
    const ReferenceSolution ref = reference_solution(config, cache_dir);
    s.diffusion_linf = compare_with_reference(r, spec.quadrature, ref, domain_left(config), domain_right(config)).rho;
  }
  return s;
}

ReferenceSolution reference_solution(const RunConfig& config, const std::filesystem::path& cache_dir) {
  const ProblemSpec spec = to_problem(config);
  FDGrid grid{domain_left(config), domain_right(config), config.reference.dx, 0.0, config.final_time};
  switch (config.reference.solver) {
    case ReferenceSettings::Solver::kinetic: {
      grid.dt = config.reference.dt_factor * config.epsilon * grid.dx;
      const double eps = config.epsilon;
      KineticFDProblem p{spec.coefficients, spec.quadrature, spec.boundary,
                         [rho0 = spec.rho0, g0 = spec.g0, eps](double x, double v) { return rho0(x) + eps * g0(x, v); },
                         grid};
      return cache_dir.empty() ? kinetic_fd(p) : kinetic_fd_cached(p, cache_dir);
    }
    case ReferenceSettings::Solver::diffusion: {
      grid.dt = config.reference.dt_factor * grid.dx * grid.dx;
      DiffusionFDProblem p{spec.coefficients, spec.quadrature.v_sq_exact(), spec.boundary.kind, config.f_left,
                           config.f_right, spec.rho0, grid};
      return cache_dir.empty() ? diffusion_fd(p) : diffusion_fd_cached(p, cache_dir);
    }
    default: throw ConfigError("config has no [reference] solver");
  }
}

Comparison compare_with_reference(const RunResult& run, const VelocityQuadrature& quadrature,
                                  const ReferenceSolution& reference, double from, double to,
                                  const std::vector<double>& exclude_at, double exclude_radius) {
  const Field j = current(run.state, quadrature);
  Comparison c;
  for (std::size_t i = 0; i < reference.x.size(); ++i) {
    const double x = reference.x[i];
    if (x < from || x > to) continue;
    bool skip = false;
    for (double e : exclude_at) skip = skip || std::abs(x - e) <= exclude_radius;
    if (skip) continue;
    c.rho = std::max(c.rho, std::abs(evaluate(run.state.rho, run.ops.mesh, x) - reference.rho[i]));
    c.current = std::max(c.current, std::abs(evaluate(j, run.ops.mesh, x) - reference.current[i]));
    ++c.nodes;
  }
  return c;
}

}  // namespace apdg
