#include "apdg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace apdg {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre_pair(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // ascending order, mirrored so the rule is exactly symmetric
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

double legendre(int m, double xi) {
  switch (m) {
    case 0: return 1.0;
    case 1: return xi;
    case 2: return 0.5 * (3.0 * xi * xi - 1.0);
    default: {
      double p = 0.0;
      double dp = 0.0;
      if (std::abs(xi) == 1.0) return (xi > 0 || m % 2 == 0) ? 1.0 : -1.0;
      legendre_pair(m, xi, p, dp);
      return p;
    }
  }
}

double legendre_derivative(int m, double xi) {
  switch (m) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: return 3.0 * xi;
    default: {
      if (std::abs(xi) == 1.0) {
        const double end = 0.5 * m * (m + 1.0);
        return (xi > 0 || m % 2 == 1) ? end : -end;
      }
      double p = 0.0;
      double dp = 0.0;
      legendre_pair(m, xi, p, dp);
      return dp;
    }
  }
}

}  // namespace apdg
