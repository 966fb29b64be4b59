#ifndef APDG_DG_OPERATORS_HPP
#define APDG_DG_OPERATORS_HPP

#include <vector>

#include "apdg/block_matrix.hpp"
#include "apdg/field.hpp"
#include "apdg/material.hpp"
#include "apdg/mesh.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

// Assembled weak-form operators. For a Field u, `dminus.apply(u)` gives the vector
// (D^- u, psi_m) over all test functions; the strong Field is M^{-1} of that.
struct DGOperatorSet {
  Mesh1D mesh;
  int degree = 0;
  int dofs = 1;
  BlockDiagonal mass;
  BlockDiagonal sigma_s;
  BlockDiagonal sigma_a;
  // (G, psi_m)
  Field source_load;
  // Lower bound of sigma_s (declared or sampled).
  double sigma_m = 0.0;
  double sigma_s_max = 0.0;
  BlockTridiagonal dminus;    // density derivative, left trace at interfaces
  BlockTridiagonal dplus;     // current derivative, right trace at interfaces
  BlockTridiagonal up_plus;   // upwind for v >= 0 (left trace), unscaled by v
  BlockTridiagonal up_minus;  // upwind for v < 0 (right trace), unscaled by v

  const BlockTridiagonal& upwind(double v) const { return v >= 0.0 ? up_plus : up_minus; }
  int cells() const { return mesh.cells(); }
};

int coefficient_points(int degree);

DGOperatorSet assemble_operators(const Mesh1D& mesh, int degree, const MaterialCoefficients& coefficients);

// M^{-1} applied to a weak-form vector.
void apply_mass_inverse(const DGOperatorSet& ops, const Field& weak, Field& out);
Field mass_inverse(const DGOperatorSet& ops, const Field& weak);

// Strong upwind derivative v d/dx g (no boundary inflow injected).
Field apply_upwind(const Field& g, double v, const DGOperatorSet& ops);

Field velocity_average(const std::vector<Field>& g, const VelocityQuadrature& quadrature);

// (I - Pi) of the upwind derivative for ordinate l, as a strong Field.
Field b_hv(const std::vector<Field>& g, int l, const DGOperatorSet& ops, const VelocityQuadrature& quadrature);

// Bilinear forms: d_h(u, w) = -(D^- u, w) and l_h(q, w) = (D^+ q, w), with periodic fluxes.
double form_d(const Field& u, const Field& w, const DGOperatorSet& ops);
double form_l(const Field& q, const Field& w, const DGOperatorSet& ops);

// Euclidean dot product of coefficient vectors.
double dot(const Field& a, const Field& b);

}  // namespace apdg

#endif
