#include "nfield/kernels.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <numbers>
#include <random>

namespace nfield {
namespace {

using std::numbers::pi;

TEST(DoG, CanonicalValueAtOrigin) {
  EXPECT_NEAR(dog_value(DoGParams::canonical(), 0.0, 0.0), pi / 2, 1e-14);
}

TEST(DoG, Symmetric) {
  const DoGParams p{2.0, 2.0, 4.0};
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng);
    EXPECT_EQ(dog_value(p, a, b), dog_value(p, -a, -b));
    EXPECT_EQ(dog_value(p, a, b), dog_value(p, b, a));
  }
}

TEST(DoG, OneDimensionalIntegralIsOneMinusKappa) {
  const auto p = DoGParams::canonical();
  using boost::math::quadrature::gauss_kronrod;
  const double I = gauss_kronrod<double, 61>::integrate([&](double x) { return dog_value(p, x); },
                                                        -6.0, 6.0, 15, 1e-14);
  EXPECT_NEAR(I, 0.0, 1e-10);
}

TEST(OmegaHat, CanonicalValues) {
  const auto p = DoGParams::canonical();
  EXPECT_EQ(omega_hat(p, 0.0), 0.0);
  const auto k = constants(p);
  EXPECT_NEAR(omega_hat(p, k.q_c), 0.25, 1e-14);
  EXPECT_NEAR(omega_hat(DoGParams{2, 2, 4}, 0.0), -1.0, 1e-15);
}

TEST(Constants, CanonicalThresholds) {
  const auto k = constants(DoGParams::canonical());
  EXPECT_NEAR(k.mu_0, 2.0, 1e-12);
  EXPECT_NEAR(k.mu_c, 4.0, 1e-12);
  EXPECT_NEAR(k.l1_norm, 0.5, 1e-12);
  EXPECT_NEAR(k.q_c * k.q_c, std::log(2.0), 1e-14);
}

TEST(Constants, QcMatchesGoldenSectionArgmax) {
  const auto p = DoGParams::canonical();
  const auto r = boost::math::tools::brent_find_minima(
      [&](double xi) { return -omega_hat(p, xi); }, 0.1, 3.0, 52);
  EXPECT_NEAR(r.first, constants(p).q_c, 1e-7);  // argmax resolution ~ sqrt(eps)
}

TEST(Constants, L1NormMatchesQuadrature) {
  const auto p = DoGParams::canonical();
  EXPECT_NEAR(l1_norm_quadrature(p), constants(p).l1_norm, 1e-6);
  const DoGParams q{0.7, 0.3, 0.8};
  EXPECT_NEAR(l1_norm_quadrature(q), constants(q).l1_norm, 1e-6);
}

TEST(Constants, RejectsInvalidParameters) {
  EXPECT_THROW(constants(DoGParams{1, 0.5, 0.4}), InvalidParams);
  EXPECT_THROW(constants(DoGParams{4, 0.5, 0.9}), InvalidParams);  // sigma1 sqrt(kappa) = 1
  EXPECT_THROW(constants(DoGParams{-1, 0.1, 0.2}), InvalidParams);
}

TEST(Constants, Mu0BelowMucForRandomParameters) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  while (checked < 1000) {
    const double s1 = 0.05 + u(rng), s2 = s1 * (1.05 + 3 * u(rng));
    const double kmax = (s2 / s1) * (s2 / s1);
    const DoGParams p{kmax * (0.02 + 0.96 * u(rng)), s1, s2};
    const auto k = constants(p);
    ASSERT_LE(k.mu_0, k.mu_c * (1 + 1e-12)) << p.kappa << ' ' << s1 << ' ' << s2;
    ASSERT_NEAR(k.l1_norm * k.mu_0, 1.0, 1e-12);
    ++checked;
  }
}

TEST(OmegaHat, MatchesDiscreteTransform) {
  const auto p = DoGParams::canonical();
  GridSpec s(10, 256);
  const SpectralOperator op = SpectralOperator::from_kernel(sample_kernel(p, s));
  const auto c = op.coefficients();
  const int nh = s.n() / 2 + 1;
  double worst = 0;
  for (int r = 0; r < s.n(); ++r) {
    const int kr = r <= s.n() / 2 ? r : r - s.n();
    for (int k = 0; k < nh; ++k) {
      const double expect = omega_hat(p, s.frequency(kr), s.frequency(k));
      worst = std::max(worst, std::abs(c[r * nh + k] - expect));
    }
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(OmegaHat, NonNegativeWhenBalanced) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double s1 = 0.05 + u(rng);
    const DoGParams p{1.0, s1, s1 * (1.01 + 2 * u(rng))};
    for (double xi = 0; xi < 10; xi += 0.05) ASSERT_GE(omega_hat(p, xi), 0.0);
  }
}

}  // namespace
}  // namespace nfield
