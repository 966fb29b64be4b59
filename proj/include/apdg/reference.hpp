#ifndef APDG_REFERENCE_HPP
#define APDG_REFERENCE_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "apdg/boundary.hpp"
#include "apdg/material.hpp"
#include "apdg/projection.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

// Uniform FD grid on [left, right]. The step is shrunk so that an integer
// number of steps lands on final_time.
struct FDGrid {
  double left = 0.0;
  double right = 1.0;
  double dx = 1e-3;
  double dt = 1e-4;
  double final_time = 0.0;

  int intervals() const;
};

struct ReferenceSolution {
  std::vector<double> x;
  std::vector<double> rho;
  std::vector<double> current;           // j = <v g>
  std::vector<std::vector<double>> f;  // per ordinate, kept on request
  int steps = 0;
  double dt = 0.0;
  double t = 0.0;
};

// Piecewise-linear interpolation of rho or current between nodes.
double interpolate(const std::vector<double>& x, const std::vector<double>& values, double at);

// First-order forward Euler upwind solver for
//   eps f_t + v f_x = sigma_s / eps (<f> - f) - eps sigma_a f + eps G
// on cell-centred nodes x_i = left + (i + 1/2) dx, with inflow values on ghost nodes.
struct KineticFDProblem {
  MaterialCoefficients coefficients;
  VelocityQuadrature quadrature = VelocityQuadrature::slab(16);
  BoundaryCondition boundary;
  KineticFunction initial_f = [](double, double) { return 0.0; };
  FDGrid grid;
};

// Throws ConfigError if dt (|v|/(eps dx) + max sigma_s / eps^2 + max sigma_a) > 1,
// SolverError naming the step if the solution stops being finite.
ReferenceSolution kinetic_fd(const KineticFDProblem& problem, bool keep_f = false);

// Forward Euler central scheme for the diffusion limit
//   rho_t = <v^2> (rho_x / sigma_s)_x - sigma_a rho + G
// on vertices x_i = left + i dx, sigma_s at half nodes. Inflow means Dirichlet
// end values rho_left / rho_right.
struct DiffusionFDProblem {
  MaterialCoefficients coefficients;
  double v_sq = 1.0 / 3.0;
  BoundaryKind boundary = BoundaryKind::periodic;
  double rho_left = 0.0;
  double rho_right = 0.0;
  ScalarFunction initial_rho = [](double) { return 0.0; };
  FDGrid grid;
};

// Throws ConfigError if dt > 0.25 dx^2 min sigma_s / <v^2> or dt max sigma_a > 1.
ReferenceSolution diffusion_fd(const DiffusionFDProblem& problem);

// Hex digest identifying a run; covers every parameter and the sampled coefficient,
// initial and inflow data on the grid.
std::string cache_key(const KineticFDProblem& problem);
std::string cache_key(const DiffusionFDProblem& problem);

// Runs through an on-disk cache in `dir` (created if missing). See README for the format.
ReferenceSolution kinetic_fd_cached(const KineticFDProblem& problem, const std::filesystem::path& dir);
ReferenceSolution diffusion_fd_cached(const DiffusionFDProblem& problem, const std::filesystem::path& dir);

void write_reference(const std::filesystem::path& path, const std::string& key, const ReferenceSolution& s);
// Returns false if the file is missing, malformed or carries a different key.
bool read_reference(const std::filesystem::path& path, const std::string& key, ReferenceSolution& s);

}  // namespace apdg

#endif
