#include "apdg/velocity.hpp"

#include <cmath>
#include <stdexcept>

#include "apdg/quadrature.hpp"

namespace apdg {

VelocityQuadrature::VelocityQuadrature(std::vector<double> nodes, std::vector<double> weights,
                                       double v_sq_exact, std::string name)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), v_sq_exact_(v_sq_exact), name_(std::move(name)) {
  if (nodes_.empty() || nodes_.size() != weights_.size())
    throw std::invalid_argument("VelocityQuadrature: nodes/weights mismatch");
  for (double v : nodes_) v_inf_ = std::max(v_inf_, std::abs(v));
}

VelocityQuadrature VelocityQuadrature::slab(int n) {
  GaussRule rule = gauss_legendre(n);
  for (double& w : rule.weights) w *= 0.5;
  return VelocityQuadrature(rule.nodes, rule.weights, 1.0 / 3.0, "slab" + std::to_string(n));
}

VelocityQuadrature VelocityQuadrature::telegraph() {
  return VelocityQuadrature({-1.0, 1.0}, {0.5, 0.5}, 1.0, "telegraph");
}

double VelocityQuadrature::v_sq() const {
  double s = 0.0;
  for (int l = 0; l < size(); ++l) s += weights_[l] * nodes_[l] * nodes_[l];
  return s;
}

}  // namespace apdg
