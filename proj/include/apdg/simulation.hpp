#ifndef APDG_SIMULATION_HPP
#define APDG_SIMULATION_HPP

#include <functional>
#include <vector>

#include "apdg/boundary.hpp"
#include "apdg/dg_operators.hpp"
#include "apdg/material.hpp"
#include "apdg/mesh.hpp"
#include "apdg/projection.hpp"
#include "apdg/stepper.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

struct DtPolicy {
  enum class Kind { cfl, fixed };
  Kind kind = Kind::cfl;
  double value = 0.0;                // fixed step
  double unconditional_factor = 0.75;  // cfl: h multiple used in the unconditionally stable branch
};

// A fully specified run of the IMEXp-DGp scheme (polynomial degree p - 1).
struct ProblemSpec {
  int order = 1;
  VelocityQuadrature quadrature = VelocityQuadrature::slab(16);
  std::vector<MeshSegment> segments;
  MaterialCoefficients coefficients;
  BoundaryCondition boundary;
  ScalarFunction rho0 = [](double) { return 0.0; };
  KineticFunction g0 = [](double, double) { return 0.0; };
  double final_time = 1.0;
  DtPolicy dt;

  int degree() const { return order - 1; }
  Mesh1D build_mesh() const;
  int total_cells() const;
  // Same problem with the mesh refined so that it has `cells` cells in total.
  ProblemSpec with_cells(int cells) const;
};

// The step actually taken: the policy step shrunk so that an integer number of steps reaches final_time.
struct StepPlan {
  double dt = 0.0;
  int steps = 0;
};
StepPlan plan_steps(const ProblemSpec& spec, const Mesh1D& mesh);

struct RunResult {
  DGOperatorSet ops;
  KineticState state;
  StepPlan plan;
};

using StepObserver = std::function<void(int step, const KineticState& state, const DGOperatorSet& ops)>;

RunResult run(const ProblemSpec& spec, const StepObserver& observer = {});

// Called after every step (not for the initial state) with the stepper that took it.
using StepperObserver = std::function<void(int step, const KineticState& state, const ImexStepper& stepper)>;
RunResult run_with_stepper(const ProblemSpec& spec, const StepperObserver& observer);

// Macroscopic current j = <v g>_h as a Field.
Field current(const KineticState& state, const VelocityQuadrature& quadrature);

}  // namespace apdg

#endif
