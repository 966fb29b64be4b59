#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "apdg/energy.hpp"
#include "apdg/fourier.hpp"
#include "apdg/projection.hpp"
#include "apdg/stepper.hpp"
#include "apdg/tableau.hpp"
#include "apdg/timestep.hpp"

using namespace apdg;
using cd = std::complex<double>;

namespace {

// Greedy nearest matching of two eigenvalue multisets; robust to sort-order ties.
double multiset_distance(std::vector<cd> a, std::vector<cd> b) {
  double worst = 0.0;
  for (const cd& x : a) {
    auto best = b.begin();
    for (auto it = b.begin(); it != b.end(); ++it)
      if (std::abs(*it - x) < std::abs(*best - x)) best = it;
    worst = std::max(worst, std::abs(*best - x));
    b.erase(best);
  }
  return worst;
}

}  // namespace

TEST(HatMatrices, PiecewiseConstantSymbols) {
  const VelocityQuadrature q = VelocityQuadrature::slab(16);
  for (double xi : {0.0, 0.4, 2.0, 5.5}) {
    const HatMatrices h = build_hat_matrices(xi, 1, q);
    EXPECT_NEAR(std::abs(h.mass(0, 0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(h.dminus(0, 0) - (1.0 - std::exp(cd(0, -xi)))), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(h.dplus(0, 0) - (std::exp(cd(0, xi)) - 1.0)), 0.0, 1e-14);
  }
  const HatMatrices z = build_hat_matrices(0.0, 1, q);
  EXPECT_EQ(std::abs(z.dminus(0, 0)), 0.0);
  EXPECT_EQ(std::abs(z.dplus(0, 0)), 0.0);
}

TEST(HatMatrices, MassIsHalfTheLegendreGram) {
  const HatMatrices h = build_hat_matrices(1.0, 3, VelocityQuadrature::telegraph());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(std::abs(h.mass(i, j) - (i == j ? 1.0 / (2 * i + 1) : 0.0)), 0.0, 1e-15);
}

TEST(HatMatrices, WeightedUpwindSymbolsSumToZero) {
  const VelocityQuadrature q = VelocityQuadrature::slab(16);
  for (int k = 1; k <= 3; ++k)
    for (double xi : {0.3, 1.9, 4.1}) {
      const HatMatrices h = build_hat_matrices(xi, k, q);
      ComplexMatrix s = ComplexMatrix::Zero(k, k);
      for (int l = 0; l < q.size(); ++l) s += q.weight(l) * h.upwind[l];
      EXPECT_LT(s.cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(HatMatrices, DerivativeSymbolsAreAdjoint) {
  for (int k = 1; k <= 3; ++k) {
    const HatMatrices h = build_hat_matrices(2.2, k, VelocityQuadrature::slab(4));
    EXPECT_LT((h.dplus + h.dminus.adjoint()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Amplification, TelegraphP0MatchesHandAssembly) {
  // IMEX1 on piecewise constants with v = -1, +1 and weights 1/2:
  //   h (r' - r) + dt/2 (e^{i xi} - 1)(g+' - g-') = 0
  //   eps^2 h (g' - g) + dt (v D- r' + sigma h g') = -eps dt (v U_v g - <v U g>)
  FourierConfig c;
  c.p = c.k = 1;
  c.quadrature = VelocityQuadrature::telegraph();
  c.epsilon = 0.3;
  c.sigma_m = 1.4;
  c.h = 0.2;
  c.dt = 0.05;
  const double e = c.epsilon, s = c.sigma_m, h = c.h, dt = c.dt;
  for (double xi : {0.7, 2.9}) {
    const cd dm = 1.0 - std::exp(cd(0, -xi)), dp = std::exp(cd(0, xi)) - 1.0;
    // ordering (rho, g_{v=-1}, g_{v=+1})
    ComplexMatrix left(3, 3), right = ComplexMatrix::Zero(3, 3);
    left << h, -0.5 * dt * dp, 0.5 * dt * dp,
            -dt * dm, e * e * h + dt * s * h, 0.0,
            dt * dm, 0.0, e * e * h + dt * s * h;
    const cd up_neg = -dp, up_pos = dm;          // v U_v for v = -1 and v = +1
    const cd mean_neg = 0.5 * up_neg, mean_pos = 0.5 * up_pos;
    right(0, 0) = h;
    right(1, 1) = e * e * h - e * dt * (up_neg - mean_neg);
    right(1, 2) = e * dt * mean_pos;
    right(2, 1) = e * dt * mean_neg;
    right(2, 2) = e * e * h - e * dt * (up_pos - mean_pos);
    const ComplexMatrix want = left.fullPivLu().solve(right);
    const ComplexMatrix got = amplification_matrix(c, xi);
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-13);
  }
}

TEST(Amplification, ZeroWaveNumberConservesDensity) {
  FourierConfig c;
  for (int p = 1; p <= 3; ++p) {
    c.p = c.k = p;
    c.epsilon = 0.2;
    c.dt = 0.3;
    const ComplexMatrix g = amplification_matrix(c, 0.0);
    // rho-mode: e_0 maps to itself
    EXPECT_NEAR(std::abs(g(0, 0) - 1.0), 0.0, 1e-12);
    bool has_one = false;
    for (const cd& l : sorted_eigenvalues(g)) has_one = has_one || std::abs(l - 1.0) < 1e-10;
    EXPECT_TRUE(has_one);
  }
}

TEST(Amplification, MatchesTheStepperOnAFourierMode) {
  // Advancing Re/Im of V e^{i xi j} with the real stepper must give G V.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 8, mode = 3;
  const double length = 2.0, h = length / n, eps = 0.3, dt = 0.05, sigma = 1.7;
  const VelocityQuadrature quad = VelocityQuadrature::slab(4);
  for (int p = 1; p <= 3; ++p)
    for (int k = 1; k <= 3; ++k) {
      MaterialCoefficients mc;
      mc.epsilon = eps;
      mc.sigma_s = [=](double) { return sigma; };
      const DGOperatorSet ops = assemble_operators(Mesh1D::uniform(0, length, n, BoundaryKind::periodic), k - 1, mc);
      FourierConfig fc;
      fc.p = p;
      fc.k = k;
      fc.quadrature = quad;
      fc.sigma_m = sigma;
      fc.epsilon = eps;
      fc.h = h;
      fc.dt = dt;
      const double xi = 2 * std::numbers::pi * mode / n;
      const int dim = fc.dimension();
      ComplexVector v(dim);
      for (int i = 0; i < dim; ++i) v[i] = cd(u(rng), u(rng));
      const ComplexVector w = amplification_matrix(fc, xi) * v;
      ImexStepper st(ops, quad, eps, BoundaryCondition::periodic(), ButcherTableau::for_order(p), dt);
      double err = 0.0;
      for (int part = 0; part < 2; ++part) {
        auto pick = [part](cd z) { return part ? z.imag() : z.real(); };
        KineticState s;
        s.rho = Field(n, k);
        s.g.assign(quad.size(), Field(n, k));
        for (int j = 0; j < n; ++j) {
          const cd ph = std::exp(cd(0, xi * j));
          for (int d = 0; d < k; ++d) {
            s.rho.cell(j)[d] = pick(v[d] * ph);
            for (int l = 0; l < quad.size(); ++l) s.g[l].cell(j)[d] = pick(v[k * (l + 1) + d] * ph);
          }
        }
        st.advance(s);
        for (int j = 0; j < n; ++j) {
          const cd ph = std::exp(cd(0, xi * j));
          for (int d = 0; d < k; ++d) {
            err = std::max(err, std::abs(pick(w[d] * ph) - s.rho.cell(j)[d]));
            for (int l = 0; l < quad.size(); ++l)
              err = std::max(err, std::abs(pick(w[k * (l + 1) + d] * ph) - s.g[l].cell(j)[d]));
          }
        }
      }
      EXPECT_LT(err, 1e-11) << "p=" << p << " k=" << k;
    }
}

TEST(Amplification, ScalingInvariance) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int p = 1; p <= 3; ++p)
    for (int k = 1; k <= 3; ++k)
      for (int trial = 0; trial < 3; ++trial) {
        FourierConfig a;
        a.p = p;
        a.k = k;
        a.quadrature = VelocityQuadrature::slab(4);
        a.epsilon = std::pow(10.0, u(rng));
        a.sigma_m = std::pow(10.0, u(rng));
        a.h = std::pow(10.0, u(rng));
        a.dt = std::pow(10.0, u(rng)) * a.epsilon * a.h;
        const double c1 = std::pow(10.0, u(rng)), c2 = std::pow(10.0, u(rng));
        FourierConfig b = a;
        b.epsilon = c1 * a.epsilon;
        b.sigma_m = a.sigma_m / c2;
        b.h = a.h * c1 * c2;
        b.dt = a.dt * c1 * c1 * c2;
        const double xi = std::numbers::pi * (1.0 + u(rng)) * 0.9;
        const double d = multiset_distance(sorted_eigenvalues(amplification_matrix(a, xi)),
                                           sorted_eigenvalues(amplification_matrix(b, xi)));
        EXPECT_LE(d, 1e-10) << "p=" << p << " k=" << k;
      }
}

TEST(Amplification, ConjugateSymmetryInWaveNumber) {
  FourierConfig c;
  c.p = 2;
  c.k = 2;
  c.quadrature = VelocityQuadrature::slab(4);
  c.epsilon = 0.4;
  c.dt = 0.2;
  const ComplexMatrix a = amplification_matrix(c, 1.1);
  const ComplexMatrix b = amplification_matrix(c, 2 * std::numbers::pi - 1.1);
  EXPECT_LT((a.conjugate() - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Stability, FirstOrderUnconditionalStripAndTheoremWitness) {
  FourierConfig base;
  base.p = base.k = 1;
  base.xi_samples = 32;
  for (double beta : {-2.0, 0.0, 2.0, 4.0})
    EXPECT_LE(max_amplification(config_at(base, std::log10(0.4), beta)), 1.0 + 1e-10) << beta;
  // alpha = 1: eps / (sigma h) = 10, step four times the energy bound
  const double eps = 10.0, tau = 2 * eps * eps / (2 * eps - 1.0);
  const double beta = std::log10(4 * tau / eps);
  EXPECT_GT(max_amplification(config_at(base, 1.0, beta)), 1.0 + 1e-10);
}

TEST(Stability, ConfigAtRealizesAlphaBeta) {
  FourierConfig base;
  const FourierConfig c = config_at(base, -1.5, 2.25);
  EXPECT_NEAR(std::log10(c.epsilon / (c.sigma_m * c.h)), -1.5, 1e-14);
  EXPECT_NEAR(std::log10(c.dt / (c.epsilon * c.h)), 2.25, 1e-14);
}

TEST(Stability, ScanIsIndependentOfThreadCount) {
  FourierConfig base;
  base.p = base.k = 2;
  base.quadrature = VelocityQuadrature::slab(4);
  base.xi_samples = 8;
  const GridAxis alpha{-1.0, 1.0, 1.0}, beta{-1.0, 1.0, 0.5};
  EXPECT_EQ(alpha.size(), 3);
  EXPECT_EQ(beta.size(), 5);
  const StabilityGrid a = scan_stability(base, alpha, beta, 1);
  const StabilityGrid b = scan_stability(base, alpha, beta, 3);
  ASSERT_EQ(a.points.size(), 15u);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].max_modulus, b.points[i].max_modulus);
    EXPECT_EQ(a.points[i].stable, a.points[i].max_modulus <= 1.0 + base.tol);
  }
  EXPECT_DOUBLE_EQ(a.at(2, 4).alpha, 1.0);
  EXPECT_DOUBLE_EQ(a.at(2, 4).beta, 1.0);
  std::ostringstream csv;
  write_stability_csv(csv, a);
  EXPECT_EQ(csv.str().substr(0, 29), "alpha,beta,max_modulus,stable");
}

TEST(Timestep, CflFormulas) {
  EXPECT_NEAR(cfl_dt(1, 1e-6, 0.1, BoundaryKind::periodic), 0.075, 1e-15);
  EXPECT_NEAR(cfl_dt(1, 1.0, 0.1, BoundaryKind::periodic), 0.075, 1e-15);
  EXPECT_NEAR(cfl_dt(1, 0.1, 0.1, BoundaryKind::periodic), 0.01 * 0.1 / 0.05, 1e-15);
  EXPECT_NEAR(cfl_dt(2, 1e-8, 1.0 / 40, BoundaryKind::inflow), 0.0025, 1e-15);
  EXPECT_NEAR(cfl_dt(2, 1e-8, 1.0 / 40, BoundaryKind::periodic), 0.75 / 40, 1e-15);
  EXPECT_NEAR(cfl_dt(2, 0.5, 0.1, BoundaryKind::periodic), (0.25 * 0.1 / std::sqrt(10.0)) / (0.5 - 0.0025), 1e-15);
  EXPECT_NEAR(cfl_dt(3, 0.5, 0.1, BoundaryKind::periodic), 0.1 * 0.25 * 0.1 / (0.5 - 0.005), 1e-15);
  EXPECT_NEAR(cfl_dt(3, 1e-3, 0.1, BoundaryKind::inflow, 0.25), 0.025, 1e-15);
  EXPECT_THROW(cfl_dt(4, 1.0, 0.1, BoundaryKind::periodic), std::invalid_argument);
}

TEST(Timestep, TheoremBound) {
  EXPECT_FALSE(theorem_stable_dt(0.05, 1.0, 0.2, 1.0).has_value());
  const auto b = theorem_stable_dt(1.0, 1.0, 0.1, 1.0);
  ASSERT_TRUE(b.has_value());
  EXPECT_NEAR(*b, 2 * 0.1 / (2 - 0.1), 1e-15);
  EXPECT_NEAR(*theorem_stable_dt(0.3, 0.0, 0.1, 0.5), 0.3 * 0.1 / 0.5, 1e-15);
}

TEST(Energy, HandSummedPiecewiseConstantState) {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const VelocityQuadrature q = VelocityQuadrature::slab(4);
  MaterialCoefficients mc;
  mc.sigma_s = [](double x) { return 1.0 + x; };  // linear: the P0 cell integral is the midpoint value
  const DGOperatorSet ops = assemble_operators(Mesh1D::uniform(0.0, 2.0, 4, BoundaryKind::periodic), 0, mc);
  KineticState s;
  s.rho = Field(4, 1);
  s.g.assign(4, Field(4, 1));
  for (double& x : s.rho.values()) x = u(rng);
  for (Field& g : s.g)
    for (double& x : g.values()) x = u(rng);
  const double eps = 0.3, dt = 0.2, mu = 0.25, h = 0.5;
  double r2 = 0.0, g2 = 0.0, gs = 0.0;
  for (int i = 0; i < 4; ++i) {
    r2 += h * s.rho[i] * s.rho[i];
    for (int l = 0; l < 4; ++l) {
      g2 += q.weight(l) * h * s.g[l][i] * s.g[l][i];
      gs += q.weight(l) * h * (1.0 + (i + 0.5) * h) * s.g[l][i] * s.g[l][i];
    }
  }
  EXPECT_NEAR(energy(s, mu, dt, ops, q, eps), r2 + eps * eps * g2 + (1 - mu) * dt * gs, 1e-13);
  EXPECT_NEAR(energy(s, 1.0, dt, ops, q, eps), energy(s, 1.0, 5 * dt, ops, q, eps), 1e-15);
  KineticState zero = s;
  zero.rho.fill(0.0);
  for (Field& g : zero.g) g.fill(0.0);
  EXPECT_EQ(energy(zero, 0.0, dt, ops, q, eps), 0.0);
}

TEST(Energy, NonIncreasingBelowTheTheoremStep) {
  const double eps = 0.5, h = 2 * std::numbers::pi / 20;
  const VelocityQuadrature q = VelocityQuadrature::slab(16);
  MaterialCoefficients mc;
  mc.epsilon = eps;
  const DGOperatorSet ops = assemble_operators(Mesh1D::uniform(0, 2 * std::numbers::pi, 20, BoundaryKind::periodic), 0, mc);
  const double dt = 0.99 * *theorem_stable_dt(eps, 1.0, h, q.v_inf());
  KineticState s = project_initial([](double x) { return std::sin(x) + (x > 3 ? 1.0 : 0.0); },
                                   [](double x, double v) { return v * std::cos(2 * x); }, ops.mesh, 0, q);
  ImexStepper st(ops, q, eps, BoundaryCondition::periodic(), ButcherTableau::imex1(), dt);
  double prev = energy(s, optimal_mu, dt, ops, q, eps);
  for (int n = 0; n < 50; ++n) {
    st.advance(s);
    const double e = energy(s, optimal_mu, dt, ops, q, eps);
    EXPECT_LE(e, prev * (1 + 1e-12));
    prev = e;
  }
}
