#include "apdg/block_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace apdg {

namespace {

template <int K>
inline void block_mv_add(const double* a, const double* x, double alpha, double* y) {
  for (int m = 0; m < K; ++m) {
    double s = 0.0;
    for (int n = 0; n < K; ++n) s += a[m * K + n] * x[n];
    y[m] += alpha * s;
  }
}

inline void block_mv_add_dyn(int k, const double* a, const double* x, double alpha, double* y) {
  switch (k) {
    case 1: block_mv_add<1>(a, x, alpha, y); return;
    case 2: block_mv_add<2>(a, x, alpha, y); return;
    case 3: block_mv_add<3>(a, x, alpha, y); return;
    default:
      for (int m = 0; m < k; ++m) {
        double s = 0.0;
        for (int n = 0; n < k; ++n) s += a[m * k + n] * x[n];
        y[m] += alpha * s;
      }
  }
}

template <int K>
void tridiagonal_apply_add(const BlockTridiagonal& a, double alpha, const Field& x, Field& y) {
  const int n = a.cells();
  const bool wrap = a.cyclic();
  for (int i = 0; i < n; ++i) {
    double* yi = y.cell(i);
    block_mv_add<K>(a.diag(i), x.cell(i), alpha, yi);
    if (i > 0) {
      block_mv_add<K>(a.lower(i), x.cell(i - 1), alpha, yi);
    } else if (wrap) {
      block_mv_add<K>(a.lower(i), x.cell(n - 1), alpha, yi);
    }
    if (i + 1 < n) {
      block_mv_add<K>(a.upper(i), x.cell(i + 1), alpha, yi);
    } else if (wrap) {
      block_mv_add<K>(a.upper(i), x.cell(0), alpha, yi);
    }
  }
}

template <int K>
void diagonal_apply_add(const BlockDiagonal& a, double alpha, const Field& x, Field& y) {
  for (int i = 0; i < a.cells(); ++i) block_mv_add<K>(a.block(i), x.cell(i), alpha, y.cell(i));
}

void check_shape(int cells, int dofs, const Field& x, const Field& y) {
  if (x.cells() != cells || x.dofs() != dofs || !x.same_shape(y))
    throw std::invalid_argument("block matrix apply: shape mismatch");
}

}  // namespace

void BlockDiagonal::apply(const Field& x, Field& y) const {
  check_shape(cells_, dofs_, x, y);
  y.fill(0.0);
  apply_add(1.0, x, y);
}

void BlockDiagonal::apply_add(double alpha, const Field& x, Field& y) const {
  check_shape(cells_, dofs_, x, y);
  switch (dofs_) {
    case 1: diagonal_apply_add<1>(*this, alpha, x, y); return;
    case 2: diagonal_apply_add<2>(*this, alpha, x, y); return;
    case 3: diagonal_apply_add<3>(*this, alpha, x, y); return;
    default:
      for (int i = 0; i < cells_; ++i) block_mv_add_dyn(dofs_, block(i), x.cell(i), alpha, y.cell(i));
  }
}

Eigen::MatrixXd BlockDiagonal::to_dense() const {
  const int n = cells_ * dofs_;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < cells_; ++i)
    for (int m = 0; m < dofs_; ++m)
      for (int k = 0; k < dofs_; ++k) d(i * dofs_ + m, i * dofs_ + k) = block(i)[m * dofs_ + k];
  return d;
}

BlockTridiagonal::BlockTridiagonal(int cells, int dofs, bool cyclic)
    : cells_(cells), dofs_(dofs), cyclic_(cyclic) {
  const std::size_t n = static_cast<std::size_t>(cells) * dofs * dofs;
  diag_.assign(n, 0.0);
  lower_.assign(n, 0.0);
  upper_.assign(n, 0.0);
}

void BlockTridiagonal::apply(const Field& x, Field& y) const {
  check_shape(cells_, dofs_, x, y);
  y.fill(0.0);
  apply_add(1.0, x, y);
}

void BlockTridiagonal::apply_add(double alpha, const Field& x, Field& y) const {
  check_shape(cells_, dofs_, x, y);
  switch (dofs_) {
    case 1: tridiagonal_apply_add<1>(*this, alpha, x, y); return;
    case 2: tridiagonal_apply_add<2>(*this, alpha, x, y); return;
    case 3: tridiagonal_apply_add<3>(*this, alpha, x, y); return;
    default: throw std::invalid_argument("BlockTridiagonal: dofs per cell must be 1..3");
  }
}

BlockTridiagonal BlockTridiagonal::transposed() const {
  BlockTridiagonal t(cells_, dofs_, cyclic_);
  const int k = dofs_;
  const int n = cells_;
  auto transpose_into = [k](const double* src, double* dst) {
    for (int m = 0; m < k; ++m)
      for (int j = 0; j < k; ++j) dst[j * k + m] = src[m * k + j];
  };
  for (int i = 0; i < n; ++i) {
    transpose_into(diag(i), t.diag(i));
    // block (i, i+1) of A^T is block (i+1, i) of A transposed
    if (i + 1 < n) {
      transpose_into(lower(i + 1), t.upper(i));
      transpose_into(upper(i), t.lower(i + 1));
    }
  }
  if (cyclic_) {
    transpose_into(lower(0), t.upper(n - 1));
    transpose_into(upper(n - 1), t.lower(0));
  }
  return t;
}

Eigen::MatrixXd BlockTridiagonal::to_dense() const {
  const int k = dofs_;
  const int n = cells_;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n * k, n * k);
  auto put = [&](int row, int col, const double* b) {
    for (int m = 0; m < k; ++m)
      for (int j = 0; j < k; ++j) d(row * k + m, col * k + j) += b[m * k + j];
  };
  for (int i = 0; i < n; ++i) {
    put(i, i, diag(i));
    if (i > 0) put(i, i - 1, lower(i));
    else if (cyclic_) put(i, n - 1, lower(i));
    if (i + 1 < n) put(i, i + 1, upper(i));
    else if (cyclic_) put(i, 0, upper(i));
  }
  return d;
}

double BlockTridiagonal::max_abs() const {
  double s = 0.0;
  for (const auto* v : {&diag_, &lower_, &upper_})
    for (double x : *v) s = std::max(s, std::abs(x));
  return s;
}

}  // namespace apdg
