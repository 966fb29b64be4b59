#include "apdg/projection.hpp"

#include "apdg/quadrature.hpp"

namespace apdg {

int projection_points(int degree) { return degree + 6; }

Field project(const ScalarFunction& u, const Mesh1D& mesh, int degree) {
  return project(u, mesh, degree, projection_points(degree));
}

Field project(const ScalarFunction& u, const Mesh1D& mesh, int degree, int points) {
  const int dofs = degree + 1;
  const GaussRule rule = gauss_legendre(points);
  Field out(mesh.cells(), dofs);
  for (int i = 0; i < mesh.cells(); ++i) {
    double* c = out.cell(i);
    for (int q = 0; q < rule.size(); ++q) {
      const double value = u(mesh.from_reference(i, rule.nodes[q]));
      for (int m = 0; m < dofs; ++m) c[m] += rule.weights[q] * value * legendre(m, rule.nodes[q]);
    }
    for (int m = 0; m < dofs; ++m) c[m] *= 0.5 * (2.0 * m + 1.0);
  }
  return out;
}

KineticState project_initial(const ScalarFunction& rho0, const KineticFunction& g0, const Mesh1D& mesh,
                             int degree, const VelocityQuadrature& quadrature) {
  KineticState state;
  state.rho = project(rho0, mesh, degree);
  state.g.reserve(quadrature.size());
  for (int l = 0; l < quadrature.size(); ++l) {
    const double v = quadrature.node(l);
    state.g.push_back(project([&](double x) { return g0(x, v); }, mesh, degree));
  }
  return state;
}

}  // namespace apdg
