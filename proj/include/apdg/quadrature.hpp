#ifndef APDG_QUADRATURE_HPP
#define APDG_QUADRATURE_HPP

#include <vector>

namespace apdg {

// Gauss-Legendre rule on [-1,1]; weights sum to 2.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

GaussRule gauss_legendre(int n);

// Legendre polynomial P_m and its derivative on the reference cell.
double legendre(int m, double xi);
double legendre_derivative(int m, double xi);

// Value of P_m at the right (+1) and left (-1) end of the reference cell.
inline double legendre_right(int) { return 1.0; }
inline double legendre_left(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

}  // namespace apdg

#endif
