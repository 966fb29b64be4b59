#ifndef APDG_FOURIER_HPP
#define APDG_FOURIER_HPP

#include <complex>
#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "apdg/velocity.hpp"

namespace apdg {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Von Neumann analysis of the scheme on a uniform periodic mesh with constant
// sigma_s = sigma_m and sigma_a = 0.
struct FourierConfig {
  int p = 1;  // IMEX order
  int k = 1;  // DG order (polynomial degree k - 1)
  VelocityQuadrature quadrature = VelocityQuadrature::slab(16);
  double sigma_m = 1.0;
  double epsilon = 1.0;
  double h = 1.0;
  double dt = 1.0;
  int xi_samples = 100;
  double tol = 1e-10;

  int dimension() const { return k * (quadrature.size() + 1); }
};

// Per-cell symbols, k x k. mass is the normalized (1/2) int phi_i phi_j; the
// derivative symbols are h-independent. upwind[l] is the per-ordinate symbol
// v_l D_l - sum_m w_m v_m D_m with D_l the upwind symbol for the sign of v_l.
struct HatMatrices {
  ComplexMatrix mass;
  ComplexMatrix dminus;
  ComplexMatrix dplus;
  std::vector<ComplexMatrix> upwind;
};

HatMatrices build_hat_matrices(double xi, int k, const VelocityQuadrature& quadrature);

// First-order system G_L V^{n+1} = G_R V^n with V = (rho, g_1, ..., g_Nv).
struct FirstOrderSystem {
  ComplexMatrix left;
  ComplexMatrix right;
};
FirstOrderSystem first_order_system(const FourierConfig& config, double xi);

// One-step map of IMEXp-DGk-S. Throws SolverError when a stage matrix is singular.
ComplexMatrix amplification_matrix(const FourierConfig& config, double xi);

// max |lambda| over the full spectrum.
double spectral_radius(const ComplexMatrix& g);

// Eigenvalues sorted by (real, imag), for multiset comparison.
std::vector<std::complex<double>> sorted_eigenvalues(const ComplexMatrix& g);

// Uniform samples xi_j = 2 pi j / n, j = 0..n-1.
std::vector<double> xi_samples(int n);

// Max over the sampled wave numbers. Uses G(2 pi - xi) = conj(G(xi)), so only
// the half range is evaluated.
double max_amplification(const FourierConfig& config);

struct GridAxis {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;
  int size() const;
  double at(int i) const { return start + i * step; }
};

struct StabilityPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double max_modulus = 0.0;
  bool stable = false;
};

// alpha = log10(eps / (sigma_m h)), beta = log10(dt / (eps h)).
struct StabilityGrid {
  GridAxis alpha;
  GridAxis beta;
  std::vector<StabilityPoint> points;  // row-major: alpha outer, beta inner

  const StabilityPoint& at(int ia, int ib) const { return points[static_cast<std::size_t>(ia) * beta.size() + ib]; }
};

// Parameters realizing (alpha, beta) with h = sigma_m = 1.
FourierConfig config_at(const FourierConfig& base, double alpha, double beta);

// Parallel over grid points; the result does not depend on the thread count.
// Eigen failures at a point are recorded as max_modulus = inf, unstable.
StabilityGrid scan_stability(const FourierConfig& base, const GridAxis& alpha, const GridAxis& beta,
                             int threads = 0, const std::function<void(int, int)>& progress = {});

void write_stability_csv(std::ostream& out, const StabilityGrid& grid);

}  // namespace apdg

#endif
