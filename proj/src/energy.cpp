#include "apdg/energy.hpp"

#include <stdexcept>

namespace apdg {

namespace {

double quadratic_form(const BlockDiagonal& a, const Field& u, Field& work) {
  a.apply(u, work);
  return dot(u, work);
}

}  // namespace

double energy(const KineticState& state, double mu, double dt, const DGOperatorSet& ops,
              const VelocityQuadrature& quadrature, double epsilon) {
  if (mu < 0.0 || mu > 1.0) throw std::invalid_argument("energy: mu must lie in [0, 1]");
  Field work(ops.cells(), ops.dofs);
  double g_sq = 0.0;
  double g_s = 0.0;
  for (int l = 0; l < quadrature.size(); ++l) {
    g_sq += quadrature.weight(l) * quadratic_form(ops.mass, state.g[l], work);
    g_s += quadrature.weight(l) * quadratic_form(ops.sigma_s, state.g[l], work);
  }
  return quadratic_form(ops.mass, state.rho, work) + epsilon * epsilon * g_sq + (1.0 - mu) * dt * g_s;
}

}  // namespace apdg
