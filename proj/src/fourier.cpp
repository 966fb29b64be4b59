#include "apdg/fourier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "apdg/error.hpp"
#include "apdg/quadrature.hpp"
#include "apdg/tableau.hpp"

namespace apdg {

namespace {

using cd = std::complex<double>;

struct RealBlocks {
  Eigen::MatrixXd volume, right_right, left_left, left_right, right_left;
};

RealBlocks reference_blocks(int k) {
  RealBlocks r{Eigen::MatrixXd::Zero(k, k), Eigen::MatrixXd::Zero(k, k), Eigen::MatrixXd::Zero(k, k),
               Eigen::MatrixXd::Zero(k, k), Eigen::MatrixXd::Zero(k, k)};
  const GaussRule rule = gauss_legendre(k + 1);
  for (int m = 0; m < k; ++m)
    for (int n = 0; n < k; ++n) {
      double s = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * legendre(n, rule.nodes[q]) * legendre_derivative(m, rule.nodes[q]);
      r.volume(m, n) = -s;
      r.right_right(m, n) = legendre_right(m) * legendre_right(n);
      r.left_left(m, n) = legendre_left(m) * legendre_left(n);
      r.left_right(m, n) = legendre_left(m) * legendre_right(n);
      r.right_left(m, n) = legendre_right(m) * legendre_left(n);
    }
  return r;
}

// Operators of the stage equations on one Fourier mode, V = (rho, g_1..g_Nv):
// weighted mass, implicit coupling/relaxation and explicit transport.
struct ModeOperators {
  ComplexMatrix mass;
  ComplexMatrix implicit_part;
  ComplexMatrix explicit_part;
};

ModeOperators mode_operators(const FourierConfig& c, double xi) {
  const HatMatrices hat = build_hat_matrices(xi, c.k, c.quadrature);
  const int k = c.k;
  const int nv = c.quadrature.size();
  const int n = c.dimension();
  const double eps2 = c.epsilon * c.epsilon;
  ModeOperators op{ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n), ComplexMatrix::Zero(n, n)};
  op.mass.block(0, 0, k, k) = c.h * hat.mass;
  for (int l = 0; l < nv; ++l) {
    const int at = k * (l + 1);
    const double v = c.quadrature.node(l);
    const double w = c.quadrature.weight(l);
    op.mass.block(at, at, k, k) = eps2 * c.h * hat.mass;
    op.implicit_part.block(0, at, k, k) = w * v * hat.dplus;
    op.implicit_part.block(at, 0, k, k) = v * hat.dminus;
    op.implicit_part.block(at, at, k, k) = c.sigma_m * c.h * hat.mass;
  }
  // v_l Up_l g_l - sum_m w_m v_m Up_m g_m: the projection couples the ordinates
  const ComplexMatrix& up_pos = hat.dminus;
  const ComplexMatrix& up_neg = hat.dplus;
  for (int l = 0; l < nv; ++l) {
    const int row = k * (l + 1);
    for (int m = 0; m < nv; ++m) {
      const int col = k * (m + 1);
      const double vm = c.quadrature.node(m);
      const ComplexMatrix& up = vm >= 0.0 ? up_pos : up_neg;
      cd coef = -c.quadrature.weight(m) * vm;
      if (m == l) coef += vm;
      op.explicit_part.block(row, col, k, k) += c.epsilon * coef * up;
    }
  }
  return op;
}

// Solves a x = b with row equilibration; throws when a is numerically singular.
ComplexMatrix solve_checked(ComplexMatrix a, ComplexMatrix b) {
  for (int r = 0; r < a.rows(); ++r) {
    const double s = a.row(r).cwiseAbs().maxCoeff();
    if (!(s > 0.0)) throw SolverError("Fourier stage matrix has a zero row");
    a.row(r) /= s;
    b.row(r) /= s;
  }
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  if (!(lu.rcond() > 1e-15)) throw SolverError("Fourier stage matrix is singular");
  return lu.solve(b);
}

}  // namespace

HatMatrices build_hat_matrices(double xi, int k, const VelocityQuadrature& quadrature) {
  if (k < 1 || k > 3) throw std::invalid_argument("build_hat_matrices: k must be 1, 2 or 3");
  const RealBlocks r = reference_blocks(k);
  const cd back = std::exp(cd(0.0, -xi));
  const cd ahead = std::exp(cd(0.0, xi));
  HatMatrices hat;
  hat.mass = ComplexMatrix::Zero(k, k);
  for (int m = 0; m < k; ++m) hat.mass(m, m) = 1.0 / (2.0 * m + 1.0);
  hat.dminus = (r.volume + r.right_right).cast<cd>() - back * r.left_right.cast<cd>();
  hat.dplus = (r.volume - r.left_left).cast<cd>() + ahead * r.right_left.cast<cd>();
  ComplexMatrix mean = ComplexMatrix::Zero(k, k);
  for (int l = 0; l < quadrature.size(); ++l) {
    const double v = quadrature.node(l);
    mean += quadrature.weight(l) * v * (v >= 0.0 ? hat.dminus : hat.dplus);
  }
  for (int l = 0; l < quadrature.size(); ++l) {
    const double v = quadrature.node(l);
    hat.upwind.push_back(v * (v >= 0.0 ? hat.dminus : hat.dplus) - mean);
  }
  return hat;
}

FirstOrderSystem first_order_system(const FourierConfig& config, double xi) {
  const ModeOperators op = mode_operators(config, xi);
  return {op.mass + config.dt * op.implicit_part, op.mass - config.dt * op.explicit_part};
}

ComplexMatrix amplification_matrix(const FourierConfig& config, double xi) {
  if (config.p == 1) {
    const FirstOrderSystem sys = first_order_system(config, xi);
    return solve_checked(sys.left, sys.right);
  }
  const ButcherTableau t = ButcherTableau::for_order(config.p);
  const ModeOperators op = mode_operators(config, xi);
  const int n = config.dimension();
  const double dt = config.dt;
  // stage maps V^n -> V^(i); stage 0 is the explicit first stage of the ARS family
  std::vector<ComplexMatrix> stage(t.stages);
  stage[0] = ComplexMatrix::Identity(n, n);
  for (int i = 1; i < t.stages; ++i) {
    ComplexMatrix rhs = op.mass;
    for (int j = 0; j < i; ++j) {
      const double ae = t.ae(i, j);
      const double ai = t.ai(i, j);
      if (ae == 0.0 && ai == 0.0) continue;
      rhs -= dt * (ae * op.explicit_part + ai * op.implicit_part) * stage[j];
    }
    stage[i] = solve_checked(op.mass + dt * t.ai(i, i) * op.implicit_part, rhs);
  }
  return stage.back();
}

double spectral_radius(const ComplexMatrix& g) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(g, false);
  if (es.info() != Eigen::Success) throw SolverError("eigenvalue iteration did not converge");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<std::complex<double>> sorted_eigenvalues(const ComplexMatrix& g) {
  Eigen::ComplexEigenSolver<ComplexMatrix> es(g, false);
  if (es.info() != Eigen::Success) throw SolverError("eigenvalue iteration did not converge");
  std::vector<cd> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return out;
}

std::vector<double> xi_samples(int n) {
  if (n < 1) throw std::invalid_argument("xi_samples: need at least one sample");
  std::vector<double> xs(n);
  for (int j = 0; j < n; ++j) xs[j] = 2.0 * std::numbers::pi * j / n;
  return xs;
}

double max_amplification(const FourierConfig& config) {
  const std::vector<double> xs = xi_samples(config.xi_samples);
  double worst = 0.0;
  for (int j = 0; 2 * j <= config.xi_samples; ++j)
    worst = std::max(worst, spectral_radius(amplification_matrix(config, xs[j])));
  return worst;
}

int GridAxis::size() const {
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("GridAxis: need step > 0 and stop >= start");
  return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
}

FourierConfig config_at(const FourierConfig& base, double alpha, double beta) {
  FourierConfig c = base;
  c.h = 1.0;
  c.sigma_m = 1.0;
  c.epsilon = std::pow(10.0, alpha);
  c.dt = std::pow(10.0, beta) * c.epsilon;
  return c;
}

StabilityGrid scan_stability(const FourierConfig& base, const GridAxis& alpha, const GridAxis& beta, int threads,
                             const std::function<void(int, int)>& progress) {
  StabilityGrid grid{alpha, beta, {}};
  const int na = alpha.size();
  const int nb = beta.size();
  const int total = na * nb;
  grid.points.resize(total);
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, std::max(total, 1));
  std::atomic<int> next{0};
  std::atomic<int> done{0};
  auto worker = [&](bool report) {
    for (int idx = next++; idx < total; idx = next++) {
      StabilityPoint& pt = grid.points[idx];
      pt.alpha = alpha.at(idx / nb);
      pt.beta = beta.at(idx % nb);
      try {
        pt.max_modulus = max_amplification(config_at(base, pt.alpha, pt.beta));
      } catch (const SolverError&) {
        pt.max_modulus = std::numeric_limits<double>::infinity();
      }
      pt.stable = pt.max_modulus <= 1.0 + base.tol;
      const int d = ++done;
      if (report && progress) progress(d, total);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker, false);
  worker(true);
  for (auto& th : pool) th.join();
  return grid;
}

void write_stability_csv(std::ostream& out, const StabilityGrid& grid) {
  out << "alpha,beta,max_modulus,stable\n";
  char buf[128];
  for (const StabilityPoint& p : grid.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", p.alpha, p.beta, p.max_modulus, p.stable ? 1 : 0);
    out << buf;
  }
}

}  // namespace apdg
