#ifndef APDG_BOUNDARY_HPP
#define APDG_BOUNDARY_HPP

#include <functional>
#include <vector>

#include "apdg/dg_operators.hpp"
#include "apdg/field.hpp"
#include "apdg/mesh.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

using InflowFunction = std::function<double(double v, double t)>;

struct InflowData {
  InflowFunction f_left = [](double, double) { return 0.0; };   // used for v >= 0
  InflowFunction f_right = [](double, double) { return 0.0; };  // used for v < 0
  double penalty = 1.0;

  static InflowData isotropic(double left, double right, double penalty = 1.0);
};

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::periodic;
  InflowData inflow;

  static BoundaryCondition periodic() { return {}; }
  static BoundaryCondition with_inflow(InflowData data) { return {BoundaryKind::inflow, std::move(data)}; }
};

// Interior traces at x_{1/2}^+ (left) and x_{N+1/2}^- (right).
struct BoundaryTraces {
  double rho_left = 0.0;
  double rho_right = 0.0;
  std::vector<double> g_left;
  std::vector<double> g_right;
};

struct BoundaryValues {
  double rho_left = 0.0;
  double rho_right = 0.0;
  std::vector<double> g_left;
  std::vector<double> g_right;
  // Interior density trace at the right edge, for the penalty term.
  double rho_right_trace = 0.0;
};

BoundaryTraces boundary_traces(const Field& rho, const std::vector<Field>& g);

BoundaryValues close_loop_values(const BoundaryTraces& traces, const InflowData& inflow, double epsilon,
                                 const VelocityQuadrature& quadrature, double t);

// Boundary contributions to weak-form operator applications. Each adds into the first/last cell of `weak`.
// (D^- rho, psi): rho_breve = rho_L at the left edge, rho_R at the right edge.
void add_density_flux(const BoundaryValues& values, double scale, Field& weak);
// (D^+ <vg>, psi): dissipative penalty c_R (rho^- - rho_R) at the right edge.
void add_current_penalty(const BoundaryValues& values, double penalty, double scale, Field& weak);
// (v d/dx g_l, psi): inflow g_L for v >= 0 at the left edge, g_R for v < 0 at the right edge.
void add_upwind_inflow(const BoundaryValues& values, int l, double v, double scale, Field& weak);

// Weak vectors of all boundary terms for one set of boundary values.
struct BoundaryFluxes {
  Field density;
  Field current;
  std::vector<Field> upwind;
};

BoundaryFluxes apply_boundary_fluxes(const BoundaryValues& values, const InflowData& inflow, int cells, int dofs,
                                     const VelocityQuadrature& quadrature);

}  // namespace apdg

#endif
