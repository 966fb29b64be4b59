#ifndef APDG_FIELD_HPP
#define APDG_FIELD_HPP

#include <cstddef>
#include <vector>

#include "apdg/mesh.hpp"

namespace apdg {

// Legendre modal coefficients, `dofs` per cell, cell-major.
class Field {
 public:
  Field() = default;
  Field(int cells, int dofs) : cells_(cells), dofs_(dofs), data_(static_cast<std::size_t>(cells) * dofs, 0.0) {}

  int cells() const { return cells_; }
  int dofs() const { return dofs_; }
  std::size_t size() const { return data_.size(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  double* cell(int i) { return data_.data() + static_cast<std::size_t>(i) * dofs_; }
  const double* cell(int i) const { return data_.data() + static_cast<std::size_t>(i) * dofs_; }
  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }
  std::vector<double>& values() { return data_; }
  const std::vector<double>& values() const { return data_; }

  void fill(double value);
  bool same_shape(const Field& other) const { return cells_ == other.cells_ && dofs_ == other.dofs_; }

  // Polynomial value in cell i at reference coordinate xi.
  double eval(int i, double xi) const;

 private:
  int cells_ = 0;
  int dofs_ = 0;
  std::vector<double> data_;
};

struct KineticState {
  Field rho;
  std::vector<Field> g;
  double t = 0.0;
};

double evaluate(const Field& f, const Mesh1D& mesh, double x);
// sqrt(integral of f^2), using the exact Legendre mass.
double l2_norm(const Field& f, const Mesh1D& mesh);
double max_abs(const Field& f);
// Integral of the polynomial over the whole mesh.
double integral(const Field& f, const Mesh1D& mesh);

// y += a x
void axpy(double a, const Field& x, Field& y);

}  // namespace apdg

#endif
