#include "apdg/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "apdg/quadrature.hpp"

namespace apdg {

double sampled_difference(const Field& coarse, const Mesh1D& coarse_mesh, const Field& fine, const Mesh1D& fine_mesh) {
  const GaussRule rule = gauss_legendre(kSamplesPerCell);
  double worst = 0.0;
  for (int i = 0; i < coarse_mesh.cells(); ++i) {
    for (int q = 0; q < rule.size(); ++q) {
      const double x = coarse_mesh.from_reference(i, rule.nodes[q]);
      const int f = fine_mesh.locate(x);
      const double d = coarse.eval(i, rule.nodes[q]) - fine.eval(f, fine_mesh.to_reference(f, x));
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

std::vector<ConvergenceRow> richardson_table(const ProblemSpec& base, const std::vector<int>& levels) {
  if (levels.empty()) throw std::invalid_argument("richardson_table: no levels");
  for (std::size_t i = 1; i < levels.size(); ++i)
    if (levels[i] != 2 * levels[i - 1]) throw std::invalid_argument("richardson_table: levels must double");

  std::vector<RunResult> runs;
  for (int n : levels) runs.push_back(run(base.with_cells(n)));
  runs.push_back(run(base.with_cells(2 * levels.back())));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const RunResult& c = runs[i];
    const RunResult& f = runs[i + 1];
    ConvergenceRow row;
    row.cells = levels[i];
    row.error_rho = sampled_difference(c.state.rho, c.ops.mesh, f.state.rho, f.ops.mesh);
    for (std::size_t l = 0; l < c.state.g.size(); ++l)
      row.error_g = std::max(row.error_g, sampled_difference(c.state.g[l], c.ops.mesh, f.state.g[l], f.ops.mesh));
    row.order_rho = nan;
    row.order_g = nan;
    if (i > 0) {
      row.order_rho = std::log2(rows.back().error_rho / row.error_rho);
      row.order_g = std::log2(rows.back().error_g / row.error_g);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace apdg
