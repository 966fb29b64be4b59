#include "apdg/dg_operators.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "apdg/quadrature.hpp"

namespace apdg {

namespace {

struct ReferenceBlocks {
  int k = 1;
  std::vector<double> volume;      // -int phi_n phi_m' dxi
  std::vector<double> right_right; // phi_m(1) phi_n(1)
  std::vector<double> left_left;   // phi_m(-1) phi_n(-1)
  std::vector<double> left_right;  // phi_m(-1) phi_n(1): test on left end, trial on right end
  std::vector<double> right_left;  // phi_m(1) phi_n(-1)
};

ReferenceBlocks reference_blocks(int dofs) {
  ReferenceBlocks r;
  r.k = dofs;
  const std::size_t kk = static_cast<std::size_t>(dofs) * dofs;
  r.volume.assign(kk, 0.0);
  r.right_right.assign(kk, 0.0);
  r.left_left.assign(kk, 0.0);
  r.left_right.assign(kk, 0.0);
  r.right_left.assign(kk, 0.0);
  const GaussRule rule = gauss_legendre(dofs + 1);
  for (int m = 0; m < dofs; ++m) {
    for (int n = 0; n < dofs; ++n) {
      double s = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * legendre(n, rule.nodes[q]) * legendre_derivative(m, rule.nodes[q]);
      const std::size_t at = static_cast<std::size_t>(m) * dofs + n;
      r.volume[at] = -s;
      r.right_right[at] = legendre_right(m) * legendre_right(n);
      r.left_left[at] = legendre_left(m) * legendre_left(n);
      r.left_right[at] = legendre_left(m) * legendre_right(n);
      r.right_left[at] = legendre_right(m) * legendre_left(n);
    }
  }
  return r;
}

// out = sum_t c_t * blocks_t
void combine(double* out, int k, std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
  for (int e = 0; e < k * k; ++e) {
    double s = 0.0;
    for (const auto& [c, b] : terms) s += c * (*b)[e];
    out[e] = s;
  }
}

}  // namespace

int coefficient_points(int degree) { return degree + 3; }

DGOperatorSet assemble_operators(const Mesh1D& mesh, int degree, const MaterialCoefficients& coefficients) {
  if (degree < 0 || degree > 2) throw std::invalid_argument("assemble_operators: degree must be 0, 1 or 2");
  const int k = degree + 1;
  const int n = mesh.cells();
  const bool periodic = mesh.periodic();
  DGOperatorSet ops{mesh, degree, k, BlockDiagonal(n, k), BlockDiagonal(n, k), BlockDiagonal(n, k), Field(n, k),
                    0.0, 0.0,
                    BlockTridiagonal(n, k, periodic), BlockTridiagonal(n, k, periodic),
                    BlockTridiagonal(n, k, periodic), BlockTridiagonal(n, k, periodic)};

  const GaussRule rule = gauss_legendre(coefficient_points(degree));
  double sampled_min = std::numeric_limits<double>::infinity();
  double sampled_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const double h = mesh.width(i);
    double* mb = ops.mass.block(i);
    for (int m = 0; m < k; ++m) mb[m * k + m] = h / (2.0 * m + 1.0);
    double* sb = ops.sigma_s.block(i);
    double* ab = ops.sigma_a.block(i);
    double* load = ops.source_load.cell(i);
    for (int q = 0; q < rule.size(); ++q) {
      const double x = mesh.from_reference(i, rule.nodes[q]);
      const double ss = coefficients.sigma_s(x);
      const double sa = coefficients.sigma_a(x);
      const double src = coefficients.source(x);
      if (ss < 0.0 || sa < 0.0) throw std::invalid_argument("assemble_operators: negative cross section");
      sampled_min = std::min(sampled_min, ss);
      sampled_max = std::max(sampled_max, ss);
      const double w = 0.5 * h * rule.weights[q];
      for (int m = 0; m < k; ++m) {
        const double pm = legendre(m, rule.nodes[q]);
        load[m] += w * src * pm;
        for (int j = 0; j < k; ++j) {
          const double pj = legendre(j, rule.nodes[q]);
          sb[m * k + j] += w * ss * pm * pj;
          ab[m * k + j] += w * sa * pm * pj;
        }
      }
    }
  }
  ops.sigma_m = coefficients.sigma_m.value_or(sampled_min);
  ops.sigma_s_max = sampled_max;

  const ReferenceBlocks r = reference_blocks(k);
  for (int i = 0; i < n; ++i) {
    const bool last = (i == n - 1);
    // left trace at every interface: own right end on the diagonal, neighbour's right end below it
    combine(ops.up_plus.diag(i), k, {{1.0, &r.volume}, {1.0, &r.right_right}});
    combine(ops.up_plus.lower(i), k, {{-1.0, &r.left_right}});
    // right trace at every interface: own left end on the diagonal, neighbour's left end above it
    combine(ops.up_minus.diag(i), k, {{1.0, &r.volume}, {-1.0, &r.left_left}});
    combine(ops.up_minus.upper(i), k, {{1.0, &r.right_left}});

    std::copy_n(ops.up_plus.diag(i), k * k, ops.dminus.diag(i));
    std::copy_n(ops.up_plus.lower(i), k * k, ops.dminus.lower(i));
    std::copy_n(ops.up_minus.diag(i), k * k, ops.dplus.diag(i));
    std::copy_n(ops.up_minus.upper(i), k * k, ops.dplus.upper(i));
    if (!periodic && last) {
      // density flux at the right boundary is boundary data; current flux uses the interior trace
      combine(ops.dminus.diag(i), k, {{1.0, &r.volume}});
      combine(ops.dplus.diag(i), k, {{1.0, &r.volume}, {-1.0, &r.left_left}, {1.0, &r.right_right}});
    }
  }
  if (!periodic) {
    for (BlockTridiagonal* d : {&ops.up_plus, &ops.up_minus, &ops.dminus, &ops.dplus}) {
      std::fill_n(d->lower(0), k * k, 0.0);
      std::fill_n(d->upper(n - 1), k * k, 0.0);
    }
  }
  return ops;
}

void apply_mass_inverse(const DGOperatorSet& ops, const Field& weak, Field& out) {
  const int k = ops.dofs;
  for (int i = 0; i < ops.cells(); ++i) {
    const double* mb = ops.mass.block(i);
    const double* w = weak.cell(i);
    double* o = out.cell(i);
    for (int m = 0; m < k; ++m) o[m] = w[m] / mb[m * k + m];
  }
}

Field mass_inverse(const DGOperatorSet& ops, const Field& weak) {
  Field out(weak.cells(), weak.dofs());
  apply_mass_inverse(ops, weak, out);
  return out;
}

Field apply_upwind(const Field& g, double v, const DGOperatorSet& ops) {
  Field weak(g.cells(), g.dofs());
  ops.upwind(v).apply_add(v, g, weak);
  return mass_inverse(ops, weak);
}

Field velocity_average(const std::vector<Field>& g, const VelocityQuadrature& quadrature) {
  if (static_cast<int>(g.size()) != quadrature.size())
    throw std::invalid_argument("velocity_average: ordinate count mismatch");
  Field avg(g.front().cells(), g.front().dofs());
  for (int l = 0; l < quadrature.size(); ++l) axpy(quadrature.weight(l), g[l], avg);
  return avg;
}

Field b_hv(const std::vector<Field>& g, int l, const DGOperatorSet& ops, const VelocityQuadrature& quadrature) {
  if (static_cast<int>(g.size()) != quadrature.size())
    throw std::invalid_argument("b_hv: ordinate count mismatch");
  Field weak(g[l].cells(), g[l].dofs());
  ops.upwind(quadrature.node(l)).apply_add(quadrature.node(l), g[l], weak);
  for (int j = 0; j < quadrature.size(); ++j) {
    const double v = quadrature.node(j);
    ops.upwind(v).apply_add(-quadrature.weight(j) * v, g[j], weak);
  }
  return mass_inverse(ops, weak);
}

double dot(const Field& a, const Field& b) {
  double s = 0.0;
  for (std::size_t e = 0; e < a.size(); ++e) s += a[e] * b[e];
  return s;
}

double form_d(const Field& u, const Field& w, const DGOperatorSet& ops) {
  Field du(u.cells(), u.dofs());
  ops.dminus.apply(u, du);
  return -dot(du, w);
}

double form_l(const Field& q, const Field& w, const DGOperatorSet& ops) {
  Field dq(q.cells(), q.dofs());
  ops.dplus.apply(q, dq);
  return dot(dq, w);
}

}  // namespace apdg
