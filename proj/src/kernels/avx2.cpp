#include "apdg/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>

namespace apdg::kernels::avx2 {

// Same operation order as the scalar loops, with fused multiply-adds.
void upwind_relax_row(std::size_t n, const double* f, const double* up, double c, const double* relax,
                      const double* absorb, const double* rho, const double* src, double* out) {
  const __m256d cv = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d fi = _mm256_loadu_pd(f + i);
    __m256d acc = _mm256_fmadd_pd(cv, _mm256_sub_pd(_mm256_loadu_pd(up + i), fi), fi);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(relax + i), _mm256_sub_pd(_mm256_loadu_pd(rho + i), fi), acc);
    acc = _mm256_fnmadd_pd(_mm256_loadu_pd(absorb + i), fi, acc);
    _mm256_storeu_pd(out + i, _mm256_add_pd(acc, _mm256_loadu_pd(src + i)));
  }
  for (; i < n; ++i)
    out[i] = f[i] + c * (up[i] - f[i]) + relax[i] * (rho[i] - f[i]) - absorb[i] * f[i] + src[i];
}

void accumulate_moment(std::size_t n, double w, const double* f, double* acc) {
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(wv, _mm256_loadu_pd(f + i), _mm256_loadu_pd(acc + i)));
  for (; i < n; ++i) acc[i] += w * f[i];
}

void diffusion_row(std::size_t n, const double* u, const double* kl, const double* kr, double coef,
                   const double* absorb, const double* src, double* out) {
  const __m256d cv = _mm256_set1_pd(coef);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ui = _mm256_loadu_pd(u + i);
    const __m256d right = _mm256_mul_pd(_mm256_loadu_pd(kr + i), _mm256_sub_pd(_mm256_loadu_pd(u + i + 1), ui));
    const __m256d flux = _mm256_fnmadd_pd(_mm256_loadu_pd(kl + i), _mm256_sub_pd(ui, _mm256_loadu_pd(u + i - 1)), right);
    __m256d acc = _mm256_fmadd_pd(cv, flux, ui);
    acc = _mm256_fnmadd_pd(_mm256_loadu_pd(absorb + i), ui, acc);
    _mm256_storeu_pd(out + i, _mm256_add_pd(acc, _mm256_loadu_pd(src + i)));
  }
  for (; i < n; ++i)
    out[i] = u[i] + coef * (kr[i] * (u[i + 1] - u[i]) - kl[i] * (u[i] - u[i - 1])) - absorb[i] * u[i] + src[i];
}

}  // namespace apdg::kernels::avx2

#else

// Non-x86 builds: the AVX2 entry points alias the scalar code and are never selected.
namespace apdg::kernels::avx2 {
void upwind_relax_row(std::size_t n, const double* f, const double* up, double c, const double* relax,
                      const double* absorb, const double* rho, const double* src, double* out) {
  scalar::upwind_relax_row(n, f, up, c, relax, absorb, rho, src, out);
}
void accumulate_moment(std::size_t n, double w, const double* f, double* acc) {
  scalar::accumulate_moment(n, w, f, acc);
}
void diffusion_row(std::size_t n, const double* u, const double* kl, const double* kr, double coef,
                   const double* absorb, const double* src, double* out) {
  scalar::diffusion_row(n, u, kl, kr, coef, absorb, src, out);
}
}  // namespace apdg::kernels::avx2

#endif
