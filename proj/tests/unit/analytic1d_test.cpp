#include "nfield/analytic1d.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "nfield/error.hpp"

namespace nfield::analytic {
namespace {

using std::numbers::pi;

TEST(Khat, SpecExamples) {
  EXPECT_EQ(std::abs(khat_eval({0.0, 0.0})), 0.0);
  const double qc = std::sqrt(std::log(2.0));
  EXPECT_NEAR(khat_eval({qc, 0.0}).real(), 1.0 / 3.0, 1e-15);
  const cplx p00 = std::polar(1.0, pi / 4) * std::sqrt(pi / 3);
  EXPECT_LE(std::abs(h_eval(p00)), 1e-12);
  EXPECT_THROW(khat_eval(p00), NearPole);
}

TEST(Poles, AreZerosOfH) {
  for (const auto& pr : poles_and_residues(30)) {
    EXPECT_LE(std::abs(h_eval(pr.pole)), 1e-10) << pr.family << pr.k << "," << pr.l;
  }
}

TEST(Poles, FourFoldSymmetry) {
  const auto ps = poles_and_residues(5);
  for (std::size_t i = 0; i < ps.size(); i += 4) {
    const cplx base = ps[i].pole;
    EXPECT_LT(std::abs(ps[i + 1].pole - base * cplx(0, 1)), 1e-14);
    EXPECT_LT(std::abs(ps[i + 2].pole + base), 1e-14);
    EXPECT_LT(std::abs(ps[i + 3].pole - base * cplx(0, -1)), 1e-14);
  }
}

TEST(Poles, ResiduesMatchContourIntegral) {
  for (const auto& pr : poles_and_residues(4)) {
    const double r = 1e-3;
    const int m = 64;
    cplx sum = 0;
    for (int j = 0; j < m; ++j) {
      const cplx e = std::polar(1.0, 2 * pi * j / m);
      sum += khat_eval(pr.pole + r * e) * r * e;
    }
    const cplx res = sum / static_cast<double>(m);
    EXPECT_LT(std::abs(res - pr.residue), 1e-8) << pr.family << pr.k << "," << pr.l;
  }
}

TEST(Poles, LeadingResidueClosedForm) {
  const auto ps = poles_and_residues(1);
  const cplx expect = std::polar(1.0, -5 * pi / 12) / (2 * std::sqrt(pi));
  EXPECT_LT(std::abs(ps[0].residue - expect), 1e-14);
}

TEST(Poles, SeriesCoefficientsIncrease) {
  for (int k = 1; k < 100; ++k) {
    EXPECT_LT(d_k(k), c_k(k));
    EXPECT_LT(c_k(k), c_k(k + 1));
    EXPECT_LT(d_k(k), d_k(k + 1));
  }
}

TEST(KSeries, EvenAndDomain) {
  for (double x : {0.03, 0.2, 1.7, 6.0}) EXPECT_EQ(K_series_eval(x), K_series_eval(-x));
  EXPECT_THROW(K_series_eval(0.0), DomainError);
}

TEST(KSeries, MatchesQuadrature) {
  for (double x : {0.25, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(K_series_eval(x), K_quadrature_eval(x), 1e-8) << x;
  }
}

TEST(KSeries, LeadingTermEnvelope) {
  const double x = 1.0, A = rate();
  const double lead = 2 * std::sqrt(pi) * std::exp(-A) * std::cos(pi / 12 + A);
  EXPECT_LE(std::abs(K_series_eval(x) - lead),
            2 * std::sqrt(pi) * std::exp(-A) * remainder_S_bound() / x);
}

TEST(KSeries, TailBoundDecreasing) {
  const SeriesKernel sk(SeriesKind::K);
  double prev = sk.tail_bound(0.1, 10);
  for (double x = 0.2; x < 5; x += 0.1) {
    const double t = sk.tail_bound(x, 10);
    EXPECT_GE(t, 0.0);
    EXPECT_LT(t, prev);
    prev = t;
  }
}

TEST(KSeries, DerivativeMatchesFiniteDifference) {
  for (double x : {0.3, 0.9, 2.2}) {
    const double h = 1e-5;
    const double fd = (K_series_eval(x + h) - K_series_eval(x - h)) / (2 * h);
    EXPECT_NEAR(K_prime_series_eval(x), fd, 1e-8);
  }
}

TEST(KQuadrature, SelfConsistentAtOrigin) {
  using boost::math::quadrature::gauss_kronrod;
  auto khat = [](double xi) {
    const double w = std::exp(-xi * xi) - std::exp(-2 * xi * xi);
    return w / (1 - w);
  };
  const double direct = 2 * gauss_kronrod<double, 15>::integrate(khat, 0.0, 8.0, 20, 1e-15);
  EXPECT_NEAR(K_quadrature_eval(0.0), direct, 1e-10);
  EXPECT_NEAR(K_quadrature_eval(1.3), K_quadrature_eval(-1.3), 1e-12);
}

TEST(KQuadrature, TinyAtThree) {
  const double A = 3 * rate();
  const double k = K_quadrature_eval(3.0);
  EXPECT_LE(std::abs(k), 2 * std::sqrt(pi) * 2 * std::exp(-A));
  EXPECT_EQ(k > 0, std::cos(pi / 12 + A) > 0);
}

TEST(Remainders, EnvelopeBounds) {
  for (int i = 0; i < 50; ++i) {
    const double x = 0.1 * std::pow(50.0, i / 49.0);
    EXPECT_LE(std::abs(remainder_S(x)), remainder_S_bound()) << x;
    EXPECT_LE(std::abs(remainder_T(x)), remainder_T_bound(x)) << x;
  }
}

TEST(BHeaviside, DomainAndIntegralIdentity) {
  EXPECT_THROW(b_heaviside_eval(0.0), DomainError);
  EXPECT_THROW(b_heaviside_eval(-1.0), DomainError);
  // b(x) = int_x^inf K, so b' = -K.
  for (double x : {0.3, 0.7, 1.5, 3.0}) {
    const double h = 1e-5;
    const double fd = (b_heaviside_eval(x + h) - b_heaviside_eval(x - h)) / (2 * h);
    EXPECT_NEAR(fd, -K_series_eval(x), 1e-8) << x;
  }
  // Small-x fallback joins the series.
  EXPECT_NEAR(b_heaviside_eval(0.0499), b_heaviside_eval(0.0501), 1e-3);
}

TEST(BHeaviside, QuadratureOracle) {
  using boost::math::quadrature::gauss_kronrod;
  for (double x : {0.3, 0.7, 1.5}) {
    // b(x) = -int_0^x K(t) dt for x > 0.
    const double I = gauss_kronrod<double, 61>::integrate(
        [](double t) { return K_quadrature_eval(t); }, 0.0, x, 5, 1e-13);
    EXPECT_NEAR(b_heaviside_eval(x), -I, 1e-9) << x;
  }
}

TEST(BHeaviside, AsymptoticConstantStable) {
  // x (e^A b - (sqrt3/pi) cos(pi/3 + A)) stays bounded on [2, 6].
  double cmax = 0;
  for (double x = 2; x <= 6; x += 0.05) {
    const double A = rate() * x;
    const double scaled = SeriesKernel(SeriesKind::BHeaviside).scaled(x).value * std::sqrt(3.0) / pi;
    cmax = std::max(cmax, std::abs(x * (scaled - std::sqrt(3.0) / pi * std::cos(pi / 3 + A))));
  }
  EXPECT_LT(cmax, 0.1);
}

TEST(Zeros, KFirstBracket) {
  const auto t = locate_zeros(SeriesKind::K, 1);
  ASSERT_EQ(t.rows.size(), 1u);
  const auto& r = t.rows[0];
  EXPECT_NEAR(r.bracket_lo, 0.6334, 1e-4);
  EXPECT_NEAR(r.bracket_hi, 1.3244, 1e-4);
  EXPECT_NEAR(r.reference, 0.9789, 1e-4);
  EXPECT_NEAR(r.bound, 0.0514, 1e-4);
  EXPECT_NEAR(r.zero, 0.97875, 1e-4);
  EXPECT_TRUE(r.unique);
  EXPECT_TRUE(r.pass);
}

TEST(Zeros, BothTablesPassTo20) {
  for (SeriesKind kind : {SeriesKind::K, SeriesKind::BHeaviside}) {
    const auto t = locate_zeros(kind, 20);
    ASSERT_EQ(t.rows.size(), 20u);
    for (const auto& r : t.rows) {
      EXPECT_TRUE(r.pass) << static_cast<int>(kind) << " k=" << r.k;
      EXPECT_GT(r.zero, r.bracket_lo);
      EXPECT_LT(r.zero, r.bracket_hi);
    }
    EXPECT_TRUE(t.all_pass());
  }
}

TEST(Zeros, ZeroIsARootOfTheQuadratureKernel) {
  const auto t = locate_zeros(SeriesKind::K, 3);
  for (const auto& r : t.rows) {
    const double A = rate() * r.zero;
    EXPECT_LT(std::abs(K_quadrature_eval(r.zero)) * std::exp(A), 1e-7);
  }
}

TEST(Zeros, BFirstBound) {
  const auto t = locate_zeros(SeriesKind::BHeaviside, 1);
  EXPECT_NEAR(t.rows[0].bound, std::sqrt(6.0) / (2 * pi * pi) * std::asin(2 * std::sqrt(5.0) / (10 * pi)),
              1e-15);
  EXPECT_NEAR(t.rows[0].zero, 0.80648, 1e-4);
}

TEST(NegativeControl, GaussianHasNoSignChange) {
  const auto rep = gaussian_negative_control();
  EXPECT_EQ(rep.gaussian_sign_changes, 0);
  EXPECT_GT(rep.gaussian_min, 0.0);
  EXPECT_GE(rep.dog_sign_changes, 10);
  EXPECT_LT(rep.evenness_error, 1e-15);
  EXPECT_TRUE(rep.pass());
}

TEST(NegativeControl, GaussianSeriesMatchesQuadrature) {
  using boost::math::quadrature::gauss_kronrod;
  for (double x : {0.0, 0.4, 1.1}) {
    const double I = 2 * gauss_kronrod<double, 61>::integrate(
                             [&](double xi) {
                               const double w = std::exp(-xi * xi);
                               return std::cos(2 * pi * xi * x) * w / (1 - 0.5 * w);
                             },
                             0.0, 7.0, 15, 1e-15);
    EXPECT_NEAR(gaussian_K_eval(x), I, 1e-10) << x;
  }
}

}  // namespace
}  // namespace nfield::analytic
