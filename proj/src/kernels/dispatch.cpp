#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "apdg/kernels.hpp"

namespace apdg::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  const char* env = std::getenv("APDG_SIMD");
  if (env && std::string_view(env) == "scalar") return Isa::scalar;
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

void force_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("ISA not available: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

void upwind_relax_row(std::size_t n, const double* f, const double* up, double c, const double* relax,
                      const double* absorb, const double* rho, const double* src, double* out) {
  if (active_isa() == Isa::avx2) avx2::upwind_relax_row(n, f, up, c, relax, absorb, rho, src, out);
  else scalar::upwind_relax_row(n, f, up, c, relax, absorb, rho, src, out);
}

void accumulate_moment(std::size_t n, double w, const double* f, double* acc) {
  if (active_isa() == Isa::avx2) avx2::accumulate_moment(n, w, f, acc);
  else scalar::accumulate_moment(n, w, f, acc);
}

void diffusion_row(std::size_t n, const double* u, const double* kl, const double* kr, double coef,
                   const double* absorb, const double* src, double* out) {
  if (active_isa() == Isa::avx2) avx2::diffusion_row(n, u, kl, kr, coef, absorb, src, out);
  else scalar::diffusion_row(n, u, kl, kr, coef, absorb, src, out);
}

}  // namespace apdg::kernels
