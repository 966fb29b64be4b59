#ifndef APDG_PROJECTION_HPP
#define APDG_PROJECTION_HPP

#include <functional>

#include "apdg/field.hpp"
#include "apdg/material.hpp"
#include "apdg/mesh.hpp"
#include "apdg/velocity.hpp"

namespace apdg {

using KineticFunction = std::function<double(double x, double v)>;

// Number of Gauss points used per cell for projections.
int projection_points(int degree);

Field project(const ScalarFunction& u, const Mesh1D& mesh, int degree);
Field project(const ScalarFunction& u, const Mesh1D& mesh, int degree, int points);

KineticState project_initial(const ScalarFunction& rho0, const KineticFunction& g0, const Mesh1D& mesh,
                             int degree, const VelocityQuadrature& quadrature);

}  // namespace apdg

#endif
