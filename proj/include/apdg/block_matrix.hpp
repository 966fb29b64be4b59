#ifndef APDG_BLOCK_MATRIX_HPP
#define APDG_BLOCK_MATRIX_HPP

#include <vector>

#include <Eigen/Dense>

#include "apdg/field.hpp"

namespace apdg {

// Per-cell dense K x K blocks, row-major (row = test index, column = trial index).
class BlockDiagonal {
 public:
  BlockDiagonal() = default;
  BlockDiagonal(int cells, int dofs) : cells_(cells), dofs_(dofs), data_(static_cast<std::size_t>(cells) * dofs * dofs, 0.0) {}

  int cells() const { return cells_; }
  int dofs() const { return dofs_; }
  double* block(int i) { return data_.data() + static_cast<std::size_t>(i) * dofs_ * dofs_; }
  const double* block(int i) const { return data_.data() + static_cast<std::size_t>(i) * dofs_ * dofs_; }

  void apply(const Field& x, Field& y) const;
  void apply_add(double alpha, const Field& x, Field& y) const;
  Eigen::MatrixXd to_dense() const;

 private:
  int cells_ = 0;
  int dofs_ = 0;
  std::vector<double> data_;
};

// Block tridiagonal matrix; with `cyclic` the first lower and last upper blocks wrap around.
class BlockTridiagonal {
 public:
  BlockTridiagonal() = default;
  BlockTridiagonal(int cells, int dofs, bool cyclic);

  int cells() const { return cells_; }
  int dofs() const { return dofs_; }
  bool cyclic() const { return cyclic_; }

  // Block (i, i), block (i, i-1) and block (i, i+1), indices taken mod N when cyclic.
  double* diag(int i) { return at(diag_, i); }
  double* lower(int i) { return at(lower_, i); }
  double* upper(int i) { return at(upper_, i); }
  const double* diag(int i) const { return at(diag_, i); }
  const double* lower(int i) const { return at(lower_, i); }
  const double* upper(int i) const { return at(upper_, i); }

  void apply(const Field& x, Field& y) const;
  void apply_add(double alpha, const Field& x, Field& y) const;
  BlockTridiagonal transposed() const;
  Eigen::MatrixXd to_dense() const;
  double max_abs() const;

 private:
  double* at(std::vector<double>& v, int i) { return v.data() + static_cast<std::size_t>(i) * dofs_ * dofs_; }
  const double* at(const std::vector<double>& v, int i) const {
    return v.data() + static_cast<std::size_t>(i) * dofs_ * dofs_;
  }

  int cells_ = 0;
  int dofs_ = 0;
  bool cyclic_ = false;
  std::vector<double> diag_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

}  // namespace apdg

#endif
