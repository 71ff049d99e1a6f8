#include "nfield/imaging.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "nfield/stimuli.hpp"

namespace nfield {
namespace {

using std::numbers::pi;

TEST(Binarize, ZeroIsWhite) {
  const auto p = binarize(Field::zeros(GridSpec(2, 16)));
  for (auto b : p.bits) EXPECT_EQ(b, 1);
}

TEST(Binarize, FunnelGivesStripesOfPitchPointTwo) {
  GridSpec s(10, 1000);
  const auto p = binarize(generate(Stimulus::funnel(), s));
  int transitions = 0;
  for (int j = 0; j < s.n(); ++j) {
    transitions += p.white(17, j) != p.white(17, (j + 1) % s.n());
    for (int i = 0; i < s.n(); i += 97) ASSERT_EQ(p.white(i, j), p.white(0, j));
  }
  // Two sign changes per period 0.4 over a length of 20.
  EXPECT_EQ(transitions, 100);
}

TEST(Binarize, ScaleInvariant) {
  GridSpec s(3, 32);
  const Field h = random_smooth_field(s, 4);
  EXPECT_EQ(binarize(h).count_differences(binarize(3.0 * h)), 0u);
}

TEST(RetinoCortical, Examples) {
  const auto a = retino_cortical({1.0, 0.0});
  EXPECT_EQ(a.x1, 0.0);
  EXPECT_EQ(a.x2, 0.0);
  const auto b = retino_cortical({std::exp(2.0), pi / 2});
  EXPECT_NEAR(b.x1, 2.0, 1e-15);
  EXPECT_EQ(b.x2, pi / 2);
  EXPECT_THROW(retino_cortical({0.0, 1.0}), DomainError);
}

TEST(RetinoCortical, RoundTrip) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> r(1e-3, 1e3), th(-pi + 1e-9, pi);
  for (int i = 0; i < 1000; ++i) {
    const RetinalPoint p{r(rng), th(rng)};
    const RetinalPoint q = cortico_retinal(retino_cortical(p));
    ASSERT_NEAR(q.r, p.r, 1e-14 * p.r);
    ASSERT_NEAR(q.theta, p.theta, 1e-14);
  }
}

int transitions_on_circle(const Image& img, double radius_px) {
  const int samples = 20000;
  const double c = img.width / 2.0;
  int count = 0;
  bool prev = false;
  for (int k = 0; k <= samples; ++k) {
    const double t = 2 * pi * k / samples + 1e-4;
    const int col = static_cast<int>(c + radius_px * std::cos(t));
    const int row = static_cast<int>(c - radius_px * std::sin(t));
    const bool black = img.at(row, col) < 128;
    if (k > 0 && black != prev) ++count;
    prev = black;
  }
  return count;
}

TEST(Warp, FunnelBecomesFan) {
  GridSpec s(10, 1000);
  WarpOptions o;
  o.out_px = 1024;
  o.r_max = std::exp(2.0);
  const Image img = warp_to_retina(binarize(generate(Stimulus::funnel(), s)), o);
  // cos(5 pi theta) has 32 zeros on (-pi, pi].
  EXPECT_EQ(transitions_on_circle(img, 300), 32);
}

TEST(Warp, TunnelBecomesRings) {
  GridSpec s(10, 2000);
  WarpOptions o;
  o.out_px = 1024;
  o.r_max = std::exp(2.0);
  const Image img = warp_to_retina(binarize(generate(Stimulus::tunnel(), s)), o);
  const double px = 2 * o.r_max / o.out_px;
  int count = 0;
  bool prev = false;
  bool first = true;
  const int row = o.out_px / 2;
  for (int col = o.out_px / 2; col < o.out_px; ++col) {
    const double r = (col + 0.5) * px - o.r_max;
    if (r < 1.0 || r > o.r_max - px) continue;
    const bool black = img.at(row, col) < 128;
    if (!first && black != prev) ++count;
    prev = black;
    first = false;
  }
  // cos(5 pi log r) vanishes at log r = 0.1 + 0.2k, i.e. 10 times on [0, 2).
  EXPECT_EQ(count, 10);
}

TEST(Warp, ConstantFieldIsUniformDisk) {
  GridSpec s(4, 64);
  WarpOptions o;
  o.out_px = 128;
  const Image img = warp_to_retina(Field::constant(s, 2.0), o);
  const double c = 64, rpx = 64;
  for (int row = 0; row < 128; ++row) {
    for (int col = 0; col < 128; ++col) {
      const double d = std::hypot(row + 0.5 - c, col + 0.5 - c);
      if (d < rpx - 1) ASSERT_EQ(img.at(row, col), 0);
      if (d > rpx + 1) ASSERT_EQ(img.at(row, col), 255);
    }
  }
}

TEST(Warp, RejectsTinyOutput) {
  EXPECT_THROW(warp_to_retina(Field::zeros(GridSpec(2, 16)), WarpOptions{32, 0.0}), InvalidArgument);
}

TEST(Raster, PgmAndPbmHeaders) {
  const auto dir = std::filesystem::temp_directory_path();
  Image img{10, 3, std::vector<std::uint8_t>(30, 255)};
  img.pixels[0] = 0;
  write_pgm(dir / "nf_test.pgm", img);
  write_pbm(dir / "nf_test.pbm", img);
  std::ifstream pgm(dir / "nf_test.pgm", std::ios::binary);
  std::string magic;
  int w, h, maxval;
  pgm >> magic >> w >> h >> maxval;
  EXPECT_EQ(magic, "P5");
  EXPECT_EQ(w, 10);
  EXPECT_EQ(maxval, 255);
  EXPECT_EQ(std::filesystem::file_size(dir / "nf_test.pgm"), std::string("P5\n10 3\n255\n").size() + 30);
  EXPECT_EQ(std::filesystem::file_size(dir / "nf_test.pbm"), std::string("P4\n10 3\n").size() + 6);
  std::ifstream pbm(dir / "nf_test.pbm", std::ios::binary);
  std::string line;
  std::getline(pbm, line);
  std::getline(pbm, line);
  char first = 0;
  pbm.read(&first, 1);
  EXPECT_EQ(static_cast<unsigned char>(first), 0x80);
}

}  // namespace
}  // namespace nfield
