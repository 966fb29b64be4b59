#include "apdg/kernels.hpp"

namespace apdg::kernels::scalar {

void upwind_relax_row(std::size_t n, const double* f, const double* up, double c, const double* relax,
                      const double* absorb, const double* rho, const double* src, double* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = f[i] + c * (up[i] - f[i]) + relax[i] * (rho[i] - f[i]) - absorb[i] * f[i] + src[i];
}

void accumulate_moment(std::size_t n, double w, const double* f, double* acc) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += w * f[i];
}

void diffusion_row(std::size_t n, const double* u, const double* kl, const double* kr, double coef,
                   const double* absorb, const double* src, double* out) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = u[i] + coef * (kr[i] * (u[i + 1] - u[i]) - kl[i] * (u[i] - u[i - 1])) - absorb[i] * u[i] + src[i];
}

}  // namespace apdg::kernels::scalar
