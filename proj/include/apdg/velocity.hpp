#ifndef APDG_VELOCITY_HPP
#define APDG_VELOCITY_HPP

#include <string>
#include <vector>

namespace apdg {

// Discrete ordinates with weights normalized to total mass 1.
class VelocityQuadrature {
 public:
  VelocityQuadrature(std::vector<double> nodes, std::vector<double> weights, double v_sq_exact,
                     std::string name);

  // n-point Gauss-Legendre on [-1,1] with halved weights (slab geometry).
  static VelocityQuadrature slab(int n = 16);
  // Two-velocity telegraph model, v = -1, +1.
  static VelocityQuadrature telegraph();

  int size() const { return static_cast<int>(nodes_.size()); }
  double node(int l) const { return nodes_[l]; }
  double weight(int l) const { return weights_[l]; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double v_sq_exact() const { return v_sq_exact_; }
  // Discrete second moment sum w v^2.
  double v_sq() const;
  double v_inf() const { return v_inf_; }
  const std::string& name() const { return name_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double v_sq_exact_;
  double v_inf_ = 0.0;
  std::string name_;
};

}  // namespace apdg

#endif
