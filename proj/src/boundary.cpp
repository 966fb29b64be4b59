#include "apdg/boundary.hpp"

#include "apdg/quadrature.hpp"

namespace apdg {

InflowData InflowData::isotropic(double left, double right, double penalty) {
  InflowData d;
  d.f_left = [left](double, double) { return left; };
  d.f_right = [right](double, double) { return right; };
  d.penalty = penalty;
  return d;
}

BoundaryTraces boundary_traces(const Field& rho, const std::vector<Field>& g) {
  BoundaryTraces tr;
  const int last = rho.cells() - 1;
  tr.rho_left = rho.eval(0, -1.0);
  tr.rho_right = rho.eval(last, 1.0);
  tr.g_left.reserve(g.size());
  tr.g_right.reserve(g.size());
  for (const Field& gl : g) {
    tr.g_left.push_back(gl.eval(0, -1.0));
    tr.g_right.push_back(gl.eval(last, 1.0));
  }
  return tr;
}

namespace {

// Removes the rounding residue of the weighted mean.
void remove_mean(std::vector<double>& g, const VelocityQuadrature& quadrature) {
  double mean = 0.0;
  for (int l = 0; l < quadrature.size(); ++l) mean += quadrature.weight(l) * g[l];
  for (double& x : g) x -= mean;
}

}  // namespace

BoundaryValues close_loop_values(const BoundaryTraces& traces, const InflowData& inflow, double epsilon,
                                 const VelocityQuadrature& quadrature, double t) {
  const int nv = quadrature.size();
  BoundaryValues out;
  out.rho_right_trace = traces.rho_right;
  out.g_left.assign(nv, 0.0);
  out.g_right.assign(nv, 0.0);

  // f at the edge: inflow data on incoming ordinates, interior trace rho + eps g on outgoing ones
  std::vector<double> f_left(nv);
  std::vector<double> f_right(nv);
  for (int l = 0; l < nv; ++l) {
    const double v = quadrature.node(l);
    f_left[l] = v >= 0.0 ? inflow.f_left(v, t) : traces.rho_left + epsilon * traces.g_left[l];
    f_right[l] = v < 0.0 ? inflow.f_right(v, t) : traces.rho_right + epsilon * traces.g_right[l];
    out.rho_left += quadrature.weight(l) * f_left[l];
    out.rho_right += quadrature.weight(l) * f_right[l];
  }
  for (int l = 0; l < nv; ++l) {
    out.g_left[l] = (f_left[l] - out.rho_left) / epsilon;
    out.g_right[l] = (f_right[l] - out.rho_right) / epsilon;
  }
  remove_mean(out.g_left, quadrature);
  remove_mean(out.g_right, quadrature);
  return out;
}

void add_density_flux(const BoundaryValues& values, double scale, Field& weak) {
  const int k = weak.dofs();
  double* first = weak.cell(0);
  double* last = weak.cell(weak.cells() - 1);
  for (int m = 0; m < k; ++m) {
    first[m] -= scale * values.rho_left * legendre_left(m);
    last[m] += scale * values.rho_right * legendre_right(m);
  }
}

void add_current_penalty(const BoundaryValues& values, double penalty, double scale, Field& weak) {
  const int k = weak.dofs();
  double* last = weak.cell(weak.cells() - 1);
  const double jump = penalty * (values.rho_right_trace - values.rho_right);
  for (int m = 0; m < k; ++m) last[m] += scale * jump * legendre_right(m);
}

void add_upwind_inflow(const BoundaryValues& values, int l, double v, double scale, Field& weak) {
  const int k = weak.dofs();
  if (v >= 0.0) {
    double* first = weak.cell(0);
    for (int m = 0; m < k; ++m) first[m] -= scale * v * values.g_left[l] * legendre_left(m);
  } else {
    double* last = weak.cell(weak.cells() - 1);
    for (int m = 0; m < k; ++m) last[m] += scale * v * values.g_right[l] * legendre_right(m);
  }
}

BoundaryFluxes apply_boundary_fluxes(const BoundaryValues& values, const InflowData& inflow, int cells, int dofs,
                                     const VelocityQuadrature& quadrature) {
  BoundaryFluxes out{Field(cells, dofs), Field(cells, dofs), {}};
  add_density_flux(values, 1.0, out.density);
  add_current_penalty(values, inflow.penalty, 1.0, out.current);
  for (int l = 0; l < quadrature.size(); ++l) {
    out.upwind.emplace_back(cells, dofs);
    add_upwind_inflow(values, l, quadrature.node(l), 1.0, out.upwind.back());
  }
  return out;
}

}  // namespace apdg
