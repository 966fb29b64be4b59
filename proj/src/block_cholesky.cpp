#include "apdg/block_cholesky.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apdg/error.hpp"

namespace apdg {

namespace {

using Block = BlockTridiagonalCholesky::Block;
using Vec = BlockTridiagonalCholesky::Vec;

Block load(const double* b, int k) {
  Block out(k, k);
  for (int m = 0; m < k; ++m)
    for (int j = 0; j < k; ++j) out(m, j) = b[m * k + j];
  return out;
}

Block cholesky(const Block& a, int cell, double& pmin, double& pmax) {
  const int k = static_cast<int>(a.rows());
  Block l = Block::Zero(k, k);
  for (int j = 0; j < k; ++j) {
    double d = a(j, j);
    for (int p = 0; p < j; ++p) d -= l(j, p) * l(j, p);
    if (!(d > 0.0))
      throw SolverError("block Cholesky: pivot block " + std::to_string(cell) + " is not positive definite");
    pmin = std::min(pmin, d);
    pmax = std::max(pmax, d);
    l(j, j) = std::sqrt(d);
    for (int i = j + 1; i < k; ++i) {
      double s = a(i, j);
      for (int p = 0; p < j; ++p) s -= l(i, p) * l(j, p);
      l(i, j) = s / l(j, j);
    }
  }
  return l;
}

// X = B L^{-T}
Block right_solve_transpose(const Block& b, const Block& l) {
  return l.triangularView<Eigen::Lower>().solve(b.transpose()).transpose();
}

}  // namespace

BlockTridiagonalCholesky::BlockTridiagonalCholesky(const BlockTridiagonal& a)
    : cells_(a.cells()), dofs_(a.dofs()) {
  const int n = cells_;
  const int k = dofs_;
  border_ = a.cyclic() && n >= 3;
  chain_ = border_ ? n - 1 : n;

  // block (i, i-1) in the lower triangle; a 2-cell cyclic matrix couples through both neighbours
  auto below = [&](int i) {
    Block b = load(a.lower(i), k);
    if (a.cyclic() && n == 2 && i == 1) b += load(a.upper(1), k);
    return b;
  };

  double pmin = std::numeric_limits<double>::infinity();
  double pmax = 0.0;
  pivot_.resize(chain_);
  sub_.resize(std::max(chain_ - 1, 0));
  if (border_) edge_.resize(chain_);

  for (int i = 0; i < chain_; ++i) {
    Block s = load(a.diag(i), k);
    if (i > 0) s.noalias() -= sub_[i - 1] * sub_[i - 1].transpose();
    pivot_[i] = cholesky(s, i, pmin, pmax);
    if (i + 1 < chain_) sub_[i] = right_solve_transpose(below(i + 1), pivot_[i]);
    if (border_) {
      Block row = Block::Zero(k, k);
      if (i == 0) row += load(a.upper(n - 1), k);
      if (i == n - 2) row += load(a.lower(n - 1), k);
      if (i > 0) row.noalias() -= edge_[i - 1] * sub_[i - 1].transpose();
      edge_[i] = right_solve_transpose(row, pivot_[i]);
    }
  }
  if (border_) {
    Block s = load(a.diag(n - 1), k);
    for (int i = 0; i < chain_; ++i) s.noalias() -= edge_[i] * edge_[i].transpose();
    last_ = cholesky(s, n - 1, pmin, pmax);
  }
  condition_estimate_ = pmax / pmin;
}

void BlockTridiagonalCholesky::solve_in_place(Field& b) const {
  const int k = dofs_;
  const int n = cells_;
  auto seg = [&](int i) { return Eigen::Map<Eigen::VectorXd>(b.cell(i), k); };

  // forward: L y = b
  Vec acc_last;
  if (border_) acc_last = seg(n - 1);
  for (int i = 0; i < chain_; ++i) {
    Vec r = seg(i);
    if (i > 0) r.noalias() -= sub_[i - 1] * seg(i - 1);
    Vec y = pivot_[i].triangularView<Eigen::Lower>().solve(r);
    seg(i) = y;
    if (border_) acc_last.noalias() -= edge_[i] * y;
  }
  Vec x_last;
  if (border_) {
    Vec y = last_.triangularView<Eigen::Lower>().solve(acc_last);
    x_last = last_.transpose().triangularView<Eigen::Upper>().solve(y);
    seg(n - 1) = x_last;
  }
  // backward: L^T x = y
  for (int i = chain_ - 1; i >= 0; --i) {
    Vec r = seg(i);
    if (i + 1 < chain_) r.noalias() -= sub_[i].transpose() * seg(i + 1);
    if (border_) r.noalias() -= edge_[i].transpose() * x_last;
    seg(i) = pivot_[i].transpose().triangularView<Eigen::Upper>().solve(r);
  }
}

}  // namespace apdg
