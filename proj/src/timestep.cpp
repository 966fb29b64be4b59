#include "apdg/timestep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace apdg {

double cfl_dt(int k, double epsilon, double h, BoundaryKind boundary, double unconditional_factor) {
  const double cap = 0.75 * h;
  const double free_step = unconditional_factor * h;
  switch (k) {
    case 1:
      if (epsilon <= 0.5 * h) return free_step;
      return std::min(cap, epsilon * epsilon * h / (epsilon - 0.5 * h));
    case 2:
      if (epsilon <= 0.025 * h) return boundary == BoundaryKind::inflow ? std::min(free_step, 0.1 * h) : free_step;
      return std::min(cap, (epsilon * epsilon * h / std::sqrt(10.0)) / (epsilon - 0.025 * h));
    case 3:
      if (epsilon <= 0.05 * h) return free_step;
      return std::min(cap, 0.1 * epsilon * epsilon * h / (epsilon - 0.05 * h));
    default:
      throw std::invalid_argument("cfl_dt: k must be 1, 2 or 3");
  }
}

std::optional<double> theorem_stable_dt(double epsilon, double sigma_m, double h, double v_inf) {
  if (sigma_m <= 0.0) return epsilon * h / v_inf;
  if (epsilon / (sigma_m * h) <= 1.0 / (2.0 * v_inf)) return std::nullopt;
  return 2.0 * epsilon * epsilon * h / (2.0 * epsilon * v_inf - sigma_m * h);
}

}  // namespace apdg
