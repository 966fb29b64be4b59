#ifndef APDG_CONVERGENCE_HPP
#define APDG_CONVERGENCE_HPP

#include <vector>

#include "apdg/simulation.hpp"

namespace apdg {

struct ConvergenceRow {
  int cells = 0;
  double error_rho = 0.0;
  double order_rho = 0.0;  // log2(E_{N/2} / E_N); NaN on the first row
  double error_g = 0.0;
  double order_g = 0.0;
};

// Sample points per coarse cell for the L-infinity differences.
inline constexpr int kSamplesPerCell = 10;

// sup over sample points of |u_coarse - u_fine|, 10 Gauss points per coarse cell.
double sampled_difference(const Field& coarse, const Mesh1D& coarse_mesh, const Field& fine, const Mesh1D& fine_mesh);

// Richardson table: level N compares the runs on N and 2N cells. `levels` must double.
std::vector<ConvergenceRow> richardson_table(const ProblemSpec& base, const std::vector<int>& levels);

}  // namespace apdg

#endif
