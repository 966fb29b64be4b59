#include "apdg/simulation.hpp"

#include <cmath>
#include <stdexcept>

#include "apdg/stepper.hpp"
#include "apdg/tableau.hpp"
#include "apdg/timestep.hpp"

namespace apdg {

Mesh1D ProblemSpec::build_mesh() const { return Mesh1D::piecewise_uniform(segments, boundary.kind); }

int ProblemSpec::total_cells() const {
  int n = 0;
  for (const MeshSegment& s : segments) n += s.cells;
  return n;
}

ProblemSpec ProblemSpec::with_cells(int cells) const {
  const int base = total_cells();
  ProblemSpec out = *this;
  for (MeshSegment& s : out.segments) {
    const long scaled = static_cast<long>(s.cells) * cells;
    if (scaled % base != 0) throw std::invalid_argument("with_cells: refinement does not divide the segments");
    s.cells = static_cast<int>(scaled / base);
  }
  return out;
}

StepPlan plan_steps(const ProblemSpec& spec, const Mesh1D& mesh) {
  double dt = spec.dt.value;
  if (spec.dt.kind == DtPolicy::Kind::cfl)
    dt = cfl_dt(spec.order, spec.coefficients.epsilon, mesh.h_min(), mesh.boundary(), spec.dt.unconditional_factor);
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  StepPlan plan;
  if (spec.final_time <= 0.0) return plan;
  plan.steps = static_cast<int>(std::ceil(spec.final_time / dt * (1.0 - 1e-12)));
  plan.dt = spec.final_time / plan.steps;
  return plan;
}

namespace {

RunResult drive(const ProblemSpec& spec, const StepObserver& observer, const StepperObserver& stepper_observer) {
  const Mesh1D mesh = spec.build_mesh();
  RunResult result{assemble_operators(mesh, spec.degree(), spec.coefficients),
                   project_initial(spec.rho0, spec.g0, mesh, spec.degree(), spec.quadrature), plan_steps(spec, mesh)};
  if (observer) observer(0, result.state, result.ops);
  if (result.plan.steps == 0) return result;
  ImexStepper stepper(result.ops, spec.quadrature, spec.coefficients.epsilon, spec.boundary,
                      ButcherTableau::for_order(spec.order), result.plan.dt);
  for (int n = 1; n <= result.plan.steps; ++n) {
    stepper.advance(result.state);
    if (observer) observer(n, result.state, result.ops);
    if (stepper_observer) stepper_observer(n, result.state, stepper);
  }
  result.state.t = spec.final_time;
  return result;
}

}  // namespace

RunResult run(const ProblemSpec& spec, const StepObserver& observer) { return drive(spec, observer, {}); }

RunResult run_with_stepper(const ProblemSpec& spec, const StepperObserver& observer) {
  return drive(spec, {}, observer);
}

Field current(const KineticState& state, const VelocityQuadrature& quadrature) {
  Field j(state.rho.cells(), state.rho.dofs());
  for (int l = 0; l < quadrature.size(); ++l) axpy(quadrature.weight(l) * quadrature.node(l), state.g[l], j);
  return j;
}

}  // namespace apdg
