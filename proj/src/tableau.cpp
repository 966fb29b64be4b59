#include "apdg/tableau.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace apdg {

namespace {

ButcherTableau make(std::string name, int order, int s, std::vector<double> ae, std::vector<double> ai) {
  ButcherTableau t;
  t.name = std::move(name);
  t.order = order;
  t.stages = s;
  t.a_explicit = std::move(ae);
  t.a_implicit = std::move(ai);
  t.b_explicit.assign(t.a_explicit.end() - s, t.a_explicit.end());
  t.b_implicit.assign(t.a_implicit.end() - s, t.a_implicit.end());
  t.c_explicit.assign(s, 0.0);
  t.c_implicit.assign(s, 0.0);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      t.c_explicit[i] += t.ae(i, j);
      t.c_implicit[i] += t.ai(i, j);
    }
  const double defect = check_order_conditions(t);
  if (defect > 1e-13) throw std::logic_error("tableau " + t.name + " fails its order conditions");
  return t;
}

}  // namespace

ButcherTableau ButcherTableau::imex1() {
  return make("IMEX1", 1, 2, {0, 0, 1, 0}, {0, 0, 0, 1});
}

ButcherTableau ButcherTableau::ars222() {
  const double g = 1.0 - 1.0 / std::sqrt(2.0);
  const double d = 1.0 - 1.0 / (2.0 * g);
  return make("ARS(2,2,2)", 2, 3,
              {0, 0, 0,
               g, 0, 0,
               d, 1 - d, 0},
              {0, 0, 0,
               0, g, 0,
               0, 1 - g, g});
}

ButcherTableau ButcherTableau::ars443() {
  return make("ARS(4,4,3)", 3, 5,
              {0, 0, 0, 0, 0,
               1.0 / 2, 0, 0, 0, 0,
               11.0 / 18, 1.0 / 18, 0, 0, 0,
               5.0 / 6, -5.0 / 6, 1.0 / 2, 0, 0,
               1.0 / 4, 7.0 / 4, 3.0 / 4, -7.0 / 4, 0},
              {0, 0, 0, 0, 0,
               0, 1.0 / 2, 0, 0, 0,
               0, 1.0 / 6, 1.0 / 2, 0, 0,
               0, -1.0 / 2, 1.0 / 2, 1.0 / 2, 0,
               0, 3.0 / 2, -3.0 / 2, 1.0 / 2, 1.0 / 2});
}

ButcherTableau ButcherTableau::for_order(int p) {
  switch (p) {
    case 1: return imex1();
    case 2: return ars222();
    case 3: return ars443();
    default: throw std::invalid_argument("IMEX order must be 1, 2 or 3");
  }
}

double check_order_conditions(const ButcherTableau& t) {
  const int s = t.stages;
  double defect = 0.0;
  auto worse = [&](double d) { defect = std::max(defect, std::abs(d)); };

  // ARS structure: explicit strictly lower, implicit lower with zero first row, equal nonzero diagonal
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      if (j >= i) worse(t.ae(i, j));
      if (j > i || i == 0) worse(t.ai(i, j));
    }
  if (s > 1) {
    if (t.ai(1, 1) == 0.0) worse(1.0);
    for (int i = 2; i < s; ++i) worse(t.ai(i, i) - t.ai(1, 1));
  }
  // row sums and global stiff accuracy
  for (int i = 0; i < s; ++i) {
    double ce = 0.0;
    double ci = 0.0;
    for (int j = 0; j < s; ++j) {
      ce += t.ae(i, j);
      ci += t.ai(i, j);
    }
    worse(ce - t.c_explicit[i]);
    worse(ci - t.c_implicit[i]);
  }
  worse(t.c_explicit[s - 1] - 1.0);
  worse(t.c_implicit[s - 1] - 1.0);
  for (int j = 0; j < s; ++j) {
    worse(t.b_explicit[j] - t.ae(s - 1, j));
    worse(t.b_implicit[j] - t.ai(s - 1, j));
  }

  // additive conditions over every choice of weights, abscissae and coefficient matrix
  const std::vector<const std::vector<double>*> bs{&t.b_explicit, &t.b_implicit};
  const std::vector<const std::vector<double>*> cs{&t.c_explicit, &t.c_implicit};
  for (const auto* b : bs) {
    double s1 = 0.0;
    for (int i = 0; i < s; ++i) s1 += (*b)[i];
    worse(s1 - 1.0);
    if (t.order < 2) continue;
    for (const auto* c : cs) {
      double s2 = 0.0;
      for (int i = 0; i < s; ++i) s2 += (*b)[i] * (*c)[i];
      worse(s2 - 0.5);
    }
    if (t.order < 3) continue;
    for (const auto* c1 : cs)
      for (const auto* c2 : cs) {
        double s3 = 0.0;
        for (int i = 0; i < s; ++i) s3 += (*b)[i] * (*c1)[i] * (*c2)[i];
        worse(s3 - 1.0 / 3.0);
      }
    for (int which = 0; which < 2; ++which)
      for (const auto* c : cs) {
        double s4 = 0.0;
        for (int i = 0; i < s; ++i)
          for (int j = 0; j < s; ++j) s4 += (*b)[i] * (which == 0 ? t.ae(i, j) : t.ai(i, j)) * (*c)[j];
        worse(s4 - 1.0 / 6.0);
      }
  }
  return defect;
}

}  // namespace apdg
