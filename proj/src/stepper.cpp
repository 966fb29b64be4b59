#include "apdg/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "apdg/error.hpp"

namespace apdg {

namespace {

bool all_finite(const Field& f) {
  for (double x : f.values())
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

ImexStepper::ImexStepper(const DGOperatorSet& ops, const VelocityQuadrature& quadrature, double epsilon,
                         BoundaryCondition boundary, ButcherTableau tableau, double dt)
    : ops_(ops),
      quadrature_(quadrature),
      epsilon_(epsilon),
      boundary_(std::move(boundary)),
      tableau_(std::move(tableau)),
      dt_(dt),
      owned_schur_(std::make_unique<SchurStageSolver>(
          SchurStageSolver::prepare(tableau_.implicit_diagonal() * dt, epsilon, ops, quadrature))),
      schur_(owned_schur_.get()) {
  init_workspace();
}

ImexStepper::ImexStepper(const DGOperatorSet& ops, const VelocityQuadrature& quadrature, double epsilon,
                         BoundaryCondition boundary, ButcherTableau tableau, double dt,
                         const SchurStageSolver& schur)
    : ops_(ops),
      quadrature_(quadrature),
      epsilon_(epsilon),
      boundary_(std::move(boundary)),
      tableau_(std::move(tableau)),
      dt_(dt),
      schur_(&schur) {
  const double a_dt = tableau_.implicit_diagonal() * dt;
  if (std::abs(schur.a_dt() - a_dt) > 1e-14 * std::abs(a_dt) || schur.epsilon() != epsilon)
    throw std::invalid_argument("ImexStepper: Schur solver prepared for a different a_ii*dt or epsilon");
  init_workspace();
}

void ImexStepper::init_workspace() {
  if (!(dt_ > 0.0)) throw std::invalid_argument("ImexStepper: dt must be positive");
  const int n = ops_.cells();
  const int k = ops_.dofs;
  const int s = tableau_.stages;
  const int nv = quadrature_.size();
  relaxation_ = BlockDiagonal(n, k);
  const double eps2 = epsilon_ * epsilon_;
  for (int i = 0; i < n; ++i)
    for (int e = 0; e < k * k; ++e)
      relaxation_.block(i)[e] = ops_.sigma_s.block(i)[e] + eps2 * ops_.sigma_a.block(i)[e];
  stage_rho_.assign(s, Field(n, k));
  stage_g_.assign(s, std::vector<Field>(nv, Field(n, k)));
  acc_rho_.assign(s, Field(n, k));
  acc_g_.assign(s, std::vector<Field>(nv, Field(n, k)));
  transport_.assign(nv, Field(n, k));
  tmp_a_ = Field(n, k);
  tmp_b_ = Field(n, k);
}

BoundaryValues ImexStepper::boundary_values(const Field& rho, const std::vector<Field>& g, double t) const {
  return close_loop_values(boundary_traces(rho, g), boundary_.inflow, epsilon_, quadrature_, t);
}

void ImexStepper::advance(KineticState& state) {
  const int s = tableau_.stages;
  const int nv = quadrature_.size();
  const double dt = dt_;
  const double eps2 = epsilon_ * epsilon_;
  const bool inflow = boundary_.kind == BoundaryKind::inflow;
  const double penalty = boundary_.inflow.penalty;
  if (static_cast<int>(state.g.size()) != nv) throw std::invalid_argument("advance: ordinate count mismatch");

  for (int i = 1; i < s; ++i) {
    ops_.mass.apply(state.rho, acc_rho_[i]);
    axpy(dt * tableau_.c_explicit[i], ops_.source_load, acc_rho_[i]);
    for (int l = 0; l < nv; ++l) {
      ops_.mass.apply(state.g[l], acc_g_[i][l]);
      for (double& x : acc_g_[i][l].values()) x *= eps2;
    }
  }
  stage_rho_[0] = state.rho;
  stage_g_[0] = state.g;

  BoundaryValues prev;
  for (int j = 0; j < s; ++j) {
    const Field& rho = stage_rho_[j];
    const std::vector<Field>& g = stage_g_[j];
    if (j > 0) {
      const double a_dt = dt * tableau_.ai(j, j);
      if (inflow) {
        add_current_penalty(prev, penalty, -a_dt, acc_rho_[j]);
        for (int l = 0; l < nv; ++l) add_density_flux(prev, -a_dt * quadrature_.node(l), acc_g_[j][l]);
      }
      schur_->solve_stage(acc_rho_[j], acc_g_[j], stage_rho_[j], stage_g_[j]);
      if (!all_finite(stage_rho_[j])) throw SolverError("non-finite density in stage solve", j + 1);
    }
    if (j == s - 1) {
      if (inflow) last_stage_boundary_ = prev;
      break;
    }

    bool need_implicit = false;
    bool need_explicit = false;
    for (int i = j + 1; i < s; ++i) {
      need_implicit = need_implicit || tableau_.ai(i, j) != 0.0;
      need_explicit = need_explicit || tableau_.ae(i, j) != 0.0;
    }
    BoundaryValues cur;
    if (inflow) cur = boundary_values(rho, g, state.t + tableau_.c_explicit[j] * dt);
    const BoundaryValues& lag = (j == 0) ? cur : prev;

    if (need_implicit) {
      // density equation: D+ <v g> + Sigma_a rho (+ penalty)
      tmp_a_.fill(0.0);
      for (int l = 0; l < nv; ++l) axpy(quadrature_.weight(l) * quadrature_.node(l), g[l], tmp_a_);
      ops_.dplus.apply(tmp_a_, tmp_b_);
      ops_.sigma_a.apply_add(1.0, rho, tmp_b_);
      if (inflow) add_current_penalty(lag, penalty, 1.0, tmp_b_);
      for (int i = j + 1; i < s; ++i)
        if (tableau_.ai(i, j) != 0.0) axpy(-dt * tableau_.ai(i, j), tmp_b_, acc_rho_[i]);
      // ordinate equations: v_l D- rho + (Sigma_s + eps^2 Sigma_a) g_l
      ops_.dminus.apply(rho, tmp_a_);
      if (inflow) add_density_flux(lag, 1.0, tmp_a_);
      for (int l = 0; l < nv; ++l) {
        relaxation_.apply(g[l], tmp_b_);
        axpy(quadrature_.node(l), tmp_a_, tmp_b_);
        for (int i = j + 1; i < s; ++i)
          if (tableau_.ai(i, j) != 0.0) axpy(-dt * tableau_.ai(i, j), tmp_b_, acc_g_[i][l]);
      }
    }
    if (need_explicit) {
      tmp_a_.fill(0.0);
      for (int l = 0; l < nv; ++l) {
        const double v = quadrature_.node(l);
        ops_.upwind(v).apply(g[l], transport_[l]);
        for (double& x : transport_[l].values()) x *= v;
        if (inflow) add_upwind_inflow(cur, l, v, 1.0, transport_[l]);
        axpy(quadrature_.weight(l), transport_[l], tmp_a_);
      }
      for (int i = j + 1; i < s; ++i) {
        const double c = -epsilon_ * dt * tableau_.ae(i, j);
        if (c == 0.0) continue;
        for (int l = 0; l < nv; ++l) {
          axpy(c, transport_[l], acc_g_[i][l]);
          axpy(-c, tmp_a_, acc_g_[i][l]);
        }
      }
    }
    prev = std::move(cur);
  }
  state.rho = stage_rho_[s - 1];
  state.g = stage_g_[s - 1];
  state.t += dt;
}

KineticState step(const KineticState& state, double dt, const ButcherTableau& tableau, const DGOperatorSet& ops,
                  const VelocityQuadrature& quadrature, const MaterialCoefficients& coefficients,
                  const BoundaryCondition& boundary, const SchurStageSolver& schur) {
  ImexStepper stepper(ops, quadrature, coefficients.epsilon, boundary, tableau, dt, schur);
  KineticState next = state;
  stepper.advance(next);
  return next;
}

double local_equilibrium_residual(const KineticState& state, const ImexStepper& stepper, int skip_edge_cells) {
  const DGOperatorSet& ops = stepper.ops();
  const VelocityQuadrature& quadrature = stepper.quadrature();
  const int n = ops.cells();
  const int k = ops.dofs;
  Field drho(n, k);
  ops.dminus.apply(state.rho, drho);
  if (stepper.boundary().kind == BoundaryKind::inflow) add_density_flux(stepper.last_stage_boundary(), 1.0, drho);
  if (2 * skip_edge_cells >= n) throw std::invalid_argument("skip_edge_cells leaves no cells");
  const auto clip = [&](Field f) {
    for (int i = 0; i < skip_edge_cells; ++i)
      for (int m = 0; m < k; ++m) f.cell(i)[m] = f.cell(n - 1 - i)[m] = 0.0;
    return f;
  };
  const double denom = l2_norm(clip(mass_inverse(ops, drho)), ops.mesh);
  double worst = 0.0;
  Field r(n, k);
  for (int l = 0; l < quadrature.size(); ++l) {
    ops.sigma_s.apply(state.g[l], r);
    axpy(quadrature.node(l), drho, r);
    worst = std::max(worst, l2_norm(clip(mass_inverse(ops, r)), ops.mesh));
  }
  return denom > 0.0 ? worst / denom : worst;
}

}  // namespace apdg
