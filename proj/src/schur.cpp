#include "apdg/schur.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "apdg/error.hpp"

namespace apdg {

namespace {

using Block = BlockTridiagonalCholesky::Block;

Block load(const double* b, int k) {
  Block out(k, k);
  for (int m = 0; m < k; ++m)
    for (int j = 0; j < k; ++j) out(m, j) = b[m * k + j];
  return out;
}

void store(const Block& b, double* dst) {
  const int k = static_cast<int>(b.rows());
  for (int m = 0; m < k; ++m)
    for (int j = 0; j < k; ++j) dst[m * k + j] = b(m, j);
}

double row_sum_norm(const BlockTridiagonal& a) {
  const int k = a.dofs();
  double norm = 0.0;
  for (int i = 0; i < a.cells(); ++i) {
    for (int m = 0; m < k; ++m) {
      double s = 0.0;
      for (int j = 0; j < k; ++j)
        s += std::abs(a.diag(i)[m * k + j]) + std::abs(a.lower(i)[m * k + j]) + std::abs(a.upper(i)[m * k + j]);
      norm = std::max(norm, s);
    }
  }
  return norm;
}

}  // namespace

SchurStageSolver SchurStageSolver::prepare(double a_dt, double epsilon, const DGOperatorSet& ops,
                                           const VelocityQuadrature& quadrature) {
  if (a_dt < 0.0) throw std::invalid_argument("SchurStageSolver: a_dt must be non-negative");
  if (!(epsilon > 0.0)) throw std::invalid_argument("SchurStageSolver: epsilon must be positive");
  SchurStageSolver s;
  s.a_dt_ = a_dt;
  s.epsilon_ = epsilon;
  s.v_sq_ = quadrature.v_sq();
  s.ops_ = &ops;
  s.quadrature_ = &quadrature;

  const int n = ops.cells();
  const int k = ops.dofs;
  const double eps2 = epsilon * epsilon;
  s.theta_ = BlockDiagonal(n, k);
  s.theta_inv_ = BlockDiagonal(n, k);
  std::vector<Block> t(n);
  for (int i = 0; i < n; ++i) {
    Block th = eps2 * (load(ops.mass.block(i), k) + a_dt * load(ops.sigma_a.block(i), k)) +
               a_dt * load(ops.sigma_s.block(i), k);
    th = 0.5 * (th + th.transpose()).eval();
    const Eigen::MatrixXd dense = th;
    Eigen::LLT<Eigen::MatrixXd> llt(dense);
    if (llt.info() != Eigen::Success)
      throw SolverError("Theta block " + std::to_string(i) + " is not positive definite");
    t[i] = llt.solve(Eigen::MatrixXd::Identity(k, k));
    t[i] = 0.5 * (t[i] + t[i].transpose()).eval();
    store(th, s.theta_.block(i));
    store(t[i], s.theta_inv_.block(i));
  }

  const bool cyclic = ops.dplus.cyclic();
  s.h_ = BlockTridiagonal(n, k, cyclic);
  const double c = s.v_sq_ * a_dt * a_dt;
  for (int i = 0; i < n; ++i) {
    const bool has_next = cyclic || i + 1 < n;
    const int next = (i + 1) % n;
    const Block pd = load(ops.dplus.diag(i), k);
    const Block ql = load(ops.dminus.lower(i), k);
    Block diag = load(ops.mass.block(i), k) + a_dt * load(ops.sigma_a.block(i), k) -
                 c * (pd * t[i] * load(ops.dminus.diag(i), k));
    Block lower = -c * (pd * t[i] * ql);
    Block upper = Block::Zero(k, k);
    if (has_next) {
      const Block pu = load(ops.dplus.upper(i), k);
      diag -= c * (pu * t[next] * load(ops.dminus.lower(next), k));
      upper = -c * (pu * t[next] * load(ops.dminus.diag(next), k));
    }
    if (!cyclic && i == 0) lower.setZero();
    store(diag, s.h_.diag(i));
    store(lower, s.h_.lower(i));
    store(upper, s.h_.upper(i));
  }
  s.h_factor_ = BlockTridiagonalCholesky(s.h_);
  s.h_norm_ = row_sum_norm(s.h_);
  return s;
}

void SchurStageSolver::solve_stage(const Field& rhs_rho, const std::vector<Field>& rhs_g, Field& rho,
                                   std::vector<Field>& g) const {
  const DGOperatorSet& ops = *ops_;
  const VelocityQuadrature& quad = *quadrature_;
  const int nv = quad.size();
  if (static_cast<int>(rhs_g.size()) != nv) throw std::invalid_argument("solve_stage: ordinate count mismatch");
  const int n = ops.cells();
  const int k = ops.dofs;
  if (static_cast<int>(g.size()) != nv) g.assign(nv, Field(n, k));
  for (Field& gl : g)
    if (gl.cells() != n || gl.dofs() != k) gl = Field(n, k);

  // g_l <- Theta^{-1} r_l, current <- sum w v Theta^{-1} r_l
  Field current(n, k);
  for (int l = 0; l < nv; ++l) {
    theta_inv_.apply(rhs_g[l], g[l]);
    axpy(quad.weight(l) * quad.node(l), g[l], current);
  }
  Field reduced = rhs_rho;
  ops.dplus.apply_add(-a_dt_, current, reduced);

  rho = reduced;
  h_factor_.solve_in_place(rho);
  Field residual = reduced;
  h_.apply_add(-1.0, rho, residual);
  auto backward_error = [&](const Field& r) {
    const double denom = h_norm_ * max_abs(rho) + max_abs(reduced);
    return denom > 0.0 ? max_abs(r) / denom : 0.0;
  };
  double err = backward_error(residual);
  if (err > residual_tolerance) {
    h_factor_.solve_in_place(residual);
    axpy(1.0, residual, rho);
    residual = reduced;
    h_.apply_add(-1.0, rho, residual);
    err = backward_error(residual);
    if (err > residual_tolerance) {
      std::ostringstream msg;
      msg << "Schur density solve: backward error " << err << " exceeds " << residual_tolerance
          << " (pivot condition estimate " << h_factor_.condition_estimate() << ")";
      throw SolverError(msg.str());
    }
  }

  // g_l <- Theta^{-1} r_l - a v_l Theta^{-1} D- rho
  Field drho(n, k);
  ops.dminus.apply(rho, drho);
  Field z(n, k);
  theta_inv_.apply(drho, z);
  for (int l = 0; l < nv; ++l) axpy(-a_dt_ * quad.node(l), z, g[l]);
}

StageSolution SchurStageSolver::solve_stage(const Field& rhs_rho, const std::vector<Field>& rhs_g) const {
  StageSolution out;
  solve_stage(rhs_rho, rhs_g, out.rho, out.g);
  return out;
}

Eigen::MatrixXd assemble_full_system(double a_dt, double epsilon, const DGOperatorSet& ops,
                                     const VelocityQuadrature& quadrature) {
  const int nk = ops.cells() * ops.dofs;
  const int nv = quadrature.size();
  const long dim = static_cast<long>(nk) * (nv + 1);
  if (dim > 4000) throw std::invalid_argument("full system dimension exceeds 4000");
  const Eigen::MatrixXd m = ops.mass.to_dense();
  const Eigen::MatrixXd sa = ops.sigma_a.to_dense();
  const Eigen::MatrixXd ss = ops.sigma_s.to_dense();
  const Eigen::MatrixXd dm = ops.dminus.to_dense();
  const Eigen::MatrixXd dp = ops.dplus.to_dense();
  const double eps2 = epsilon * epsilon;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(dim, dim);
  l.block(0, 0, nk, nk) = m + a_dt * sa;
  for (int j = 0; j < nv; ++j) {
    const long off = static_cast<long>(nk) * (j + 1);
    const double v = quadrature.node(j);
    l.block(0, off, nk, nk) = a_dt * quadrature.weight(j) * v * dp;
    l.block(off, 0, nk, nk) = a_dt * v * dm;
    l.block(off, off, nk, nk) = eps2 * (m + a_dt * sa) + a_dt * ss;
  }
  return l;
}

StageSolution full_system_solve(const Field& rhs_rho, const std::vector<Field>& rhs_g, double a_dt, double epsilon,
                                const DGOperatorSet& ops, const VelocityQuadrature& quadrature) {
  const Eigen::MatrixXd l = assemble_full_system(a_dt, epsilon, ops, quadrature);
  const int nk = ops.cells() * ops.dofs;
  const int nv = quadrature.size();
  Eigen::VectorXd b(l.rows());
  for (int e = 0; e < nk; ++e) b[e] = rhs_rho[e];
  for (int j = 0; j < nv; ++j)
    for (int e = 0; e < nk; ++e) b[static_cast<long>(nk) * (j + 1) + e] = rhs_g[j][e];
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(l);
  const Eigen::VectorXd x = lu.solve(b);
  if (!x.allFinite()) throw SolverError("full system is singular");
  StageSolution out;
  out.rho = Field(ops.cells(), ops.dofs);
  for (int e = 0; e < nk; ++e) out.rho[e] = x[e];
  out.g.assign(nv, Field(ops.cells(), ops.dofs));
  for (int j = 0; j < nv; ++j)
    for (int e = 0; e < nk; ++e) out.g[j][e] = x[static_cast<long>(nk) * (j + 1) + e];
  return out;
}

}  // namespace apdg
