#ifndef APDG_STEPPER_HPP
#define APDG_STEPPER_HPP

#include <memory>
#include <vector>

#include "apdg/boundary.hpp"
#include "apdg/dg_operators.hpp"
#include "apdg/field.hpp"
#include "apdg/material.hpp"
#include "apdg/schur.hpp"
#include "apdg/tableau.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

// One IMEX step: explicit upwind transport of g, implicit coupling/relaxation via the Schur solver.
// References passed to the constructor must outlive the stepper.
class ImexStepper {
 public:
  // Builds and owns a Schur solver for a_ii * dt.
  ImexStepper(const DGOperatorSet& ops, const VelocityQuadrature& quadrature, double epsilon,
              BoundaryCondition boundary, ButcherTableau tableau, double dt);
  // Uses an externally prepared solver.
  ImexStepper(const DGOperatorSet& ops, const VelocityQuadrature& quadrature, double epsilon,
              BoundaryCondition boundary, ButcherTableau tableau, double dt, const SchurStageSolver& schur);

  void advance(KineticState& state);

  double dt() const { return dt_; }
  double epsilon() const { return epsilon_; }
  const ButcherTableau& tableau() const { return tableau_; }
  const SchurStageSolver& schur() const { return *schur_; }
  const DGOperatorSet& ops() const { return ops_; }
  const VelocityQuadrature& quadrature() const { return quadrature_; }
  const BoundaryCondition& boundary() const { return boundary_; }
  // Lagged boundary values applied by the final stage of the last step (inflow only).
  const BoundaryValues& last_stage_boundary() const { return last_stage_boundary_; }

 private:
  void init_workspace();
  BoundaryValues boundary_values(const Field& rho, const std::vector<Field>& g, double t) const;

  const DGOperatorSet& ops_;
  const VelocityQuadrature& quadrature_;
  double epsilon_;
  BoundaryCondition boundary_;
  ButcherTableau tableau_;
  double dt_;
  std::unique_ptr<SchurStageSolver> owned_schur_;
  const SchurStageSolver* schur_;
  BlockDiagonal relaxation_;  // Sigma_s + eps^2 Sigma_a
  BoundaryValues last_stage_boundary_;

  // workspace
  std::vector<Field> stage_rho_;
  std::vector<std::vector<Field>> stage_g_;
  std::vector<Field> acc_rho_;
  std::vector<std::vector<Field>> acc_g_;
  std::vector<Field> transport_;
  Field tmp_a_;
  Field tmp_b_;
};

KineticState step(const KineticState& state, double dt, const ButcherTableau& tableau, const DGOperatorSet& ops,
                  const VelocityQuadrature& quadrature, const MaterialCoefficients& coefficients,
                  const BoundaryCondition& boundary, const SchurStageSolver& schur);

// max_l || M^{-1}(Sigma_s g_l + v_l D^- rho) || / || M^{-1} D^- rho ||, L2 norms,
// for the state the stepper just produced. On inflow meshes D^- rho carries the
// boundary values its last stage used, so the check sees the discrete stage equation.
// skip_edge_cells drops that many cells at each end from both norms, leaving out
// the boundary layer that non-equilibrium inflow data creates.
double local_equilibrium_residual(const KineticState& state, const ImexStepper& stepper, int skip_edge_cells = 0);

}  // namespace apdg

#endif
