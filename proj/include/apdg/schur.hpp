#ifndef APDG_SCHUR_HPP
#define APDG_SCHUR_HPP

#include <utility>
#include <vector>

#include "apdg/block_cholesky.hpp"
#include "apdg/block_matrix.hpp"
#include "apdg/dg_operators.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

// Weak-form right-hand sides and unknowns of one implicit stage:
//   (M + a Sa) rho + a D+ <v g>       = r_rho
//   a v_l D- rho + Theta g_l          = r_l,   Theta = eps^2 (M + a Sa) + a Ss
struct StageSolution {
  Field rho;
  std::vector<Field> g;
};

class SchurStageSolver {
 public:
  static SchurStageSolver prepare(double a_dt, double epsilon, const DGOperatorSet& ops,
                                  const VelocityQuadrature& quadrature);

  void solve_stage(const Field& rhs_rho, const std::vector<Field>& rhs_g, Field& rho,
                   std::vector<Field>& g) const;
  StageSolution solve_stage(const Field& rhs_rho, const std::vector<Field>& rhs_g) const;

  double a_dt() const { return a_dt_; }
  double epsilon() const { return epsilon_; }
  double v_sq() const { return v_sq_; }
  const BlockDiagonal& theta() const { return theta_; }
  const BlockDiagonal& theta_inverse() const { return theta_inv_; }
  const BlockTridiagonal& h_matrix() const { return h_; }
  const DGOperatorSet& ops() const { return *ops_; }
  const VelocityQuadrature& quadrature() const { return *quadrature_; }

  // Normwise backward error accepted for the density solve.
  static constexpr double residual_tolerance = 1e-12;

 private:
  double a_dt_ = 0.0;
  double epsilon_ = 1.0;
  double v_sq_ = 0.0;
  const DGOperatorSet* ops_ = nullptr;
  const VelocityQuadrature* quadrature_ = nullptr;
  BlockDiagonal theta_;
  BlockDiagonal theta_inv_;
  BlockTridiagonal h_;
  BlockTridiagonalCholesky h_factor_;
  double h_norm_ = 0.0;
};

// Dense assembly of the coupled stage matrix (rho first, then each ordinate), for testing.
Eigen::MatrixXd assemble_full_system(double a_dt, double epsilon, const DGOperatorSet& ops,
                                     const VelocityQuadrature& quadrature);

// Dense partial-pivoting solve of the coupled stage system. Guarded to dimension <= 4000.
StageSolution full_system_solve(const Field& rhs_rho, const std::vector<Field>& rhs_g, double a_dt, double epsilon,
                                const DGOperatorSet& ops, const VelocityQuadrature& quadrature);

}  // namespace apdg

#endif
