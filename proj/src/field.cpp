#include "apdg/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apdg/quadrature.hpp"

namespace apdg {

void Field::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

double Field::eval(int i, double xi) const {
  const double* c = cell(i);
  double s = 0.0;
  for (int m = 0; m < dofs_; ++m) s += c[m] * legendre(m, xi);
  return s;
}

double evaluate(const Field& f, const Mesh1D& mesh, double x) {
  const int i = mesh.locate(x);
  return f.eval(i, mesh.to_reference(i, x));
}

double l2_norm(const Field& f, const Mesh1D& mesh) {
  double s = 0.0;
  for (int i = 0; i < f.cells(); ++i) {
    const double* c = f.cell(i);
    for (int m = 0; m < f.dofs(); ++m) s += mesh.width(i) / (2.0 * m + 1.0) * c[m] * c[m];
  }
  return std::sqrt(s);
}

double max_abs(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s = std::max(s, std::abs(v));
  return s;
}

double integral(const Field& f, const Mesh1D& mesh) {
  double s = 0.0;
  for (int i = 0; i < f.cells(); ++i) s += mesh.width(i) * f.cell(i)[0];
  return s;
}

void axpy(double a, const Field& x, Field& y) {
  if (!x.same_shape(y)) throw std::invalid_argument("axpy: shape mismatch");
  const std::size_t n = x.size();
  const double* xs = x.data();
  double* ys = y.data();
  for (std::size_t k = 0; k < n; ++k) ys[k] += a * xs[k];
}

}  // namespace apdg
