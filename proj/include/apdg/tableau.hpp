#ifndef APDG_TABLEAU_HPP
#define APDG_TABLEAU_HPP

#include <string>
#include <vector>

namespace apdg {

// Double Butcher tableau of an ARS-type IMEX Runge-Kutta method. Row-major s x s arrays.
struct ButcherTableau {
  std::string name;
  int order = 1;
  int stages = 1;
  std::vector<double> a_explicit;
  std::vector<double> a_implicit;
  std::vector<double> b_explicit;
  std::vector<double> b_implicit;
  std::vector<double> c_explicit;
  std::vector<double> c_implicit;

  double ae(int i, int j) const { return a_explicit[static_cast<std::size_t>(i) * stages + j]; }
  double ai(int i, int j) const { return a_implicit[static_cast<std::size_t>(i) * stages + j]; }
  // The common diagonal entry of the implicit stages 2..s.
  double implicit_diagonal() const { return ai(1, 1); }

  static ButcherTableau imex1();
  static ButcherTableau ars222();
  static ButcherTableau ars443();
  static ButcherTableau for_order(int p);
};

// Largest violation among structure, row-sum consistency, global stiff accuracy and the
// additive order conditions up to the nominal order.
double check_order_conditions(const ButcherTableau& t);

}  // namespace apdg

#endif
