#ifndef APDG_MATERIAL_HPP
#define APDG_MATERIAL_HPP

#include <functional>
#include <optional>

namespace apdg {

using ScalarFunction = std::function<double(double)>;

struct MaterialCoefficients {
  ScalarFunction sigma_s = [](double) { return 1.0; };
  ScalarFunction sigma_a = [](double) { return 0.0; };
  ScalarFunction source = [](double) { return 0.0; };
  double epsilon = 1.0;
  // Lower bound of sigma_s used by the stability predicates; defaults to the sampled minimum.
  std::optional<double> sigma_m;
};

}  // namespace apdg

#endif
