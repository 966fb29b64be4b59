#include <cmath>
#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

#include <gtest/gtest.h>

#include "apdg/kernels.hpp"

using namespace apdg;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// FMA contraction changes the last bits only
void expect_close(const std::vector<double>& a, const std::vector<double>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-14 * (1.0 + std::abs(a[i]))) << i;
}

class Avx2Kernels : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!kernels::isa_available(kernels::Isa::avx2)) GTEST_SKIP() << "no AVX2/FMA on this CPU";
  }
};

}  // namespace

TEST_F(Avx2Kernels, UpwindRelaxMatchesScalar) {
  std::mt19937 rng(1);
  for (std::size_t n = 0; n < 40; ++n) {
    // offset by one element so the vector path sees unaligned pointers
    const auto f = random_vec(n + 1, rng), up = random_vec(n + 1, rng), rho = random_vec(n, rng);
    const auto relax = random_vec(n, rng, 0.0, 0.5), absorb = random_vec(n, rng, 0.0, 0.1), src = random_vec(n, rng);
    std::vector<double> a(n), b(n);
    kernels::scalar::upwind_relax_row(n, f.data() + 1, up.data() + 1, 0.3, relax.data(), absorb.data(), rho.data(),
                                      src.data(), a.data());
    kernels::avx2::upwind_relax_row(n, f.data() + 1, up.data() + 1, 0.3, relax.data(), absorb.data(), rho.data(),
                                    src.data(), b.data());
    expect_close(a, b);
  }
}

TEST_F(Avx2Kernels, AccumulateMomentMatchesScalar) {
  std::mt19937 rng(2);
  for (std::size_t n = 0; n < 40; ++n) {
    const auto f = random_vec(n, rng);
    auto a = random_vec(n, rng);
    auto b = a;
    kernels::scalar::accumulate_moment(n, 0.37, f.data(), a.data());
    kernels::avx2::accumulate_moment(n, 0.37, f.data(), b.data());
    expect_close(a, b);
  }
}

TEST_F(Avx2Kernels, DiffusionRowMatchesScalar) {
  std::mt19937 rng(3);
  for (std::size_t n = 1; n < 40; ++n) {
    const auto u = random_vec(n + 2, rng), kl = random_vec(n, rng, 0.5, 2.0), kr = random_vec(n, rng, 0.5, 2.0);
    const auto absorb = random_vec(n, rng, 0.0, 0.1), src = random_vec(n, rng);
    std::vector<double> a(n), b(n);
    kernels::scalar::diffusion_row(n, u.data() + 1, kl.data(), kr.data(), 0.2, absorb.data(), src.data(), a.data());
    kernels::avx2::diffusion_row(n, u.data() + 1, kl.data(), kr.data(), 0.2, absorb.data(), src.data(), b.data());
    expect_close(a, b);
  }
}

TEST(ScalarKernels, FollowTheirFormulas) {
  const double f[] = {1.0, 2.0}, up[] = {0.5, 4.0}, relax[] = {0.1, 0.2}, absorb[] = {0.01, 0.0}, rho[] = {3.0, 1.0},
               src[] = {0.25, -0.5};
  double out[2];
  kernels::scalar::upwind_relax_row(2, f, up, 0.4, relax, absorb, rho, src, out);
  EXPECT_DOUBLE_EQ(out[0], 1.0 + 0.4 * (0.5 - 1.0) + 0.1 * (3.0 - 1.0) - 0.01 + 0.25);
  EXPECT_DOUBLE_EQ(out[1], 2.0 + 0.4 * (4.0 - 2.0) + 0.2 * (1.0 - 2.0) - 0.5);
  const double u[] = {1.0, 4.0, 2.0, 0.0}, kl[] = {1.0, 2.0}, kr[] = {0.5, 1.0};
  double d[2];
  kernels::scalar::diffusion_row(2, u + 1, kl, kr, 0.1, absorb, src, d);
  EXPECT_DOUBLE_EQ(d[0], 4.0 + 0.1 * (0.5 * (2.0 - 4.0) - 1.0 * (4.0 - 1.0)) - 0.04 + 0.25);
  EXPECT_DOUBLE_EQ(d[1], 2.0 + 0.1 * (1.0 * (0.0 - 2.0) - 2.0 * (2.0 - 4.0)) - 0.5);
}

TEST(Dispatch, ForceIsaSwitchesTheEntryPoints) {
  const kernels::Isa initial = kernels::active_isa();
  kernels::force_isa(kernels::Isa::scalar);
  EXPECT_EQ(kernels::active_isa(), kernels::Isa::scalar);
  EXPECT_STREQ(kernels::isa_name(kernels::Isa::scalar), "scalar");
  double acc[3] = {1.0, 1.0, 1.0};
  const double f[3] = {1.0, 2.0, 3.0};
  kernels::accumulate_moment(3, 2.0, f, acc);
  EXPECT_EQ(acc[2], 7.0);
  if (kernels::isa_available(kernels::Isa::avx2)) {
    kernels::force_isa(kernels::Isa::avx2);
    EXPECT_EQ(kernels::active_isa(), kernels::Isa::avx2);
  } else {
    EXPECT_THROW(kernels::force_isa(kernels::Isa::avx2), std::invalid_argument);
  }
  kernels::force_isa(initial);
}

// Also registered with APDG_SIMD=scalar in the environment.
TEST(Dispatch, EnvironmentSelectsTheInitialIsa) {
  const char* env = std::getenv("APDG_SIMD");
  if (env && std::string_view(env) == "scalar")
    EXPECT_EQ(kernels::active_isa(), kernels::Isa::scalar);
  else
    EXPECT_EQ(kernels::active_isa(),
              kernels::isa_available(kernels::Isa::avx2) ? kernels::Isa::avx2 : kernels::Isa::scalar);
}
