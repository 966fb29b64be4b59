#ifndef APDG_KERNELS_HPP
#define APDG_KERNELS_HPP

#include <cstddef>

// Row kernels of the finite-difference reference solvers. Each has a scalar
// reference and an AVX2+FMA variant; the public entry points dispatch at run
// time (override with APDG_SIMD=scalar).
namespace apdg::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name(Isa isa);
bool isa_available(Isa isa);
// Test hook; throws std::invalid_argument if the ISA is not available.
void force_isa(Isa isa);

// out[i] = f[i] + c (up[i] - f[i]) + relax[i] (rho[i] - f[i]) - absorb[i] f[i] + src[i]
void upwind_relax_row(std::size_t n, const double* f, const double* up, double c, const double* relax,
                      const double* absorb, const double* rho, const double* src, double* out);

// acc[i] += w f[i]
void accumulate_moment(std::size_t n, double w, const double* f, double* acc);

// out[i] = u[i] + coef (kr[i] (u[i+1] - u[i]) - kl[i] (u[i] - u[i-1])) - absorb[i] u[i] + src[i]
// u points at the first updated node; u[-1] and u[n] must be readable.
void diffusion_row(std::size_t n, const double* u, const double* kl, const double* kr, double coef,
                   const double* absorb, const double* src, double* out);

namespace scalar {
void upwind_relax_row(std::size_t n, const double* f, const double* up, double c, const double* relax,
                      const double* absorb, const double* rho, const double* src, double* out);
void accumulate_moment(std::size_t n, double w, const double* f, double* acc);
void diffusion_row(std::size_t n, const double* u, const double* kl, const double* kr, double coef,
                   const double* absorb, const double* src, double* out);
}  // namespace scalar

namespace avx2 {
void upwind_relax_row(std::size_t n, const double* f, const double* up, double c, const double* relax,
                      const double* absorb, const double* rho, const double* src, double* out);
void accumulate_moment(std::size_t n, double w, const double* f, double* acc);
void diffusion_row(std::size_t n, const double* u, const double* kl, const double* kr, double coef,
                   const double* absorb, const double* src, double* out);
}  // namespace avx2

}  // namespace apdg::kernels

#endif
