#ifndef APDG_BLOCK_CHOLESKY_HPP
#define APDG_BLOCK_CHOLESKY_HPP

#include <vector>

#include <Eigen/Dense>

#include "apdg/block_matrix.hpp"
#include "apdg/field.hpp"

namespace apdg {

// Cholesky factorization of a symmetric positive definite block tridiagonal matrix.
// The cyclic case keeps the last cell as a border: the first N-1 cells form a chain and
// the last block row collects the fill from the wrap-around coupling.
class BlockTridiagonalCholesky {
 public:
  using Block = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor, 3, 3>;
  using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;

  BlockTridiagonalCholesky() = default;
  // Uses the lower triangle of `a`; throws SolverError if a pivot block is not positive definite.
  explicit BlockTridiagonalCholesky(const BlockTridiagonal& a);

  void solve_in_place(Field& b) const;
  // Ratio of largest to smallest squared pivot; a cheap lower bound on the 2-norm condition number.
  double condition_estimate() const { return condition_estimate_; }

 private:
  int cells_ = 0;
  int dofs_ = 0;
  int chain_ = 0;
  bool border_ = false;
  std::vector<Block> pivot_;    // L(i,i), i < chain
  std::vector<Block> sub_;      // L(i+1,i), i + 1 < chain
  std::vector<Block> edge_;     // L(N-1,i) for the border row
  Block last_;                  // L(N-1,N-1) when bordered
  double condition_estimate_ = 1.0;
};

}  // namespace apdg

#endif
