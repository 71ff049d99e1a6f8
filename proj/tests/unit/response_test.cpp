#include "nfield/response.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nfield/error.hpp"

namespace nfield {
namespace {

std::vector<ResponseKind> all_kinds() {
  return {ResponseKind::linear(), ResponseKind::tanh(), ResponseKind::erf_sigmoid(),
          ResponseKind::rational(), ResponseKind::capped_linear(),
          ResponseKind::capped_linear(0.2)};
}

TEST(Response, SpecExamples) {
  const auto lin = ResponseKind::linear();
  EXPECT_EQ(lin.f(3.7), 3.7);
  EXPECT_EQ(lin.f_prime(3.7), 1.0);
  const auto rat = ResponseKind::rational();
  EXPECT_DOUBLE_EQ(rat.f(1.0), 0.5);
  EXPECT_DOUBLE_EQ(rat.f_prime(1.0), 0.25);
  const auto cap = ResponseKind::capped_linear();
  EXPECT_DOUBLE_EQ(cap.f(0.8), 0.8);
  EXPECT_DOUBLE_EQ(cap.f(2.0), 1.0);
}

TEST(Response, NormalizedAtZero) {
  for (const auto& k : all_kinds()) {
    EXPECT_EQ(k.f(0.0), 0.0) << k.name();
    EXPECT_NEAR(k.f_prime(0.0), 1.0, 1e-15) << k.name();
  }
}

TEST(Response, DerivativesMatchFiniteDifferences) {
  for (const auto& k : all_kinds()) {
    for (double s = -5; s <= 5; s += 0.01) {
      const bool near_kink = k.variant() == ResponseVariant::CappedLinear && k.delta() == 0 &&
                             std::abs(std::abs(s) - 1) < 1e-3;
      if (near_kink) continue;
      const double h = 1e-6;
      EXPECT_NEAR(k.f_prime(s), (k.f(s + h) - k.f(s - h)) / (2 * h), 1e-6) << k.name() << " " << s;
      // f'' of the rational response jumps at 0.
      if (k.variant() == ResponseVariant::Rational && std::abs(s) < 1e-3) continue;
      EXPECT_NEAR(k.f_second(s), (k.f_prime(s + h) - k.f_prime(s - h)) / (2 * h), 1e-5)
          << k.name() << " " << s;
    }
  }
}

TEST(Response, OddVariants) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (const auto& k : all_kinds()) {
    for (int i = 0; i < 1000; ++i) {
      const double s = u(rng);
      ASSERT_EQ(k.f(-s), -k.f(s)) << k.name();
    }
  }
}

TEST(Response, OneLipschitzMonotoneBounded) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-8, 8);
  for (const auto& k : all_kinds()) {
    for (int i = 0; i < 1000; ++i) {
      double s = u(rng), t = u(rng);
      if (s > t) std::swap(s, t);
      ASSERT_LE(std::abs(k.f(s) - k.f(t)), std::abs(s - t) + 1e-15) << k.name();
      ASSERT_LE(k.f(s), k.f(t)) << k.name();
      ASSERT_LE(k.f_prime(s), 1.0 + 1e-15) << k.name();
      if (k.bounded()) ASSERT_LE(std::abs(k.f(s)), 1.0) << k.name();
    }
  }
}

TEST(Response, SmoothedCappedLinear) {
  const auto k = ResponseKind::capped_linear(0.25);
  EXPECT_EQ(k.f(0.75), 0.75);
  EXPECT_NEAR(k.f(1.25), 1.0, 1e-15);
  EXPECT_NEAR(k.f_prime(1.25), 0.0, 1e-15);
  double fmax = 0;
  for (double s = 0.7; s < 1.3; s += 1e-4) fmax = std::max(fmax, std::abs(k.f_second(s)));
  EXPECT_NEAR(fmax, 0.75 / 0.25, 1e-3);
}

TEST(Response, Parse) {
  EXPECT_EQ(ResponseKind::parse("rational").variant(), ResponseVariant::Rational);
  EXPECT_EQ(ResponseKind::parse("capped-linear:0.1").delta(), 0.1);
  EXPECT_THROW(ResponseKind::parse("sigmoid"), InvalidArgument);
  EXPECT_THROW(ResponseKind::parse("capped-linear:x"), InvalidArgument);
  EXPECT_THROW(ResponseKind::capped_linear(1.5), InvalidArgument);
}

}  // namespace
}  // namespace nfield
