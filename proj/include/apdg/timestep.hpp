#ifndef APDG_TIMESTEP_HPP
#define APDG_TIMESTEP_HPP

#include <optional>

#include "apdg/mesh.hpp"

namespace apdg {

// Time step of the IMEXk-DGk scheme on mesh size h. `unconditional_factor` replaces the 0.75 used
// when the scheme is in its unconditionally stable branch.
double cfl_dt(int k, double epsilon, double h, BoundaryKind boundary, double unconditional_factor = 0.75);

// Largest stable dt of the first-order scheme from the energy estimate; empty when unconditional.
std::optional<double> theorem_stable_dt(double epsilon, double sigma_m, double h, double v_inf);

}  // namespace apdg

#endif
