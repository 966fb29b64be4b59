#ifndef APDG_ENERGY_HPP
#define APDG_ENERGY_HPP

#include "apdg/dg_operators.hpp"
#include "apdg/field.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

// ||rho||^2 + eps^2 |||g|||^2 + (1 - mu) dt |||g|||_s^2, where |||.||| is the
// weighted ordinate sum of L2 norms and |||.|||_s weights the integrand by sigma_s.
double energy(const KineticState& state, double mu, double dt, const DGOperatorSet& ops,
              const VelocityQuadrature& quadrature, double epsilon);

// The mu that maximizes both the unconditional region and the step bound.
inline constexpr double optimal_mu = 0.0;

}  // namespace apdg

#endif
