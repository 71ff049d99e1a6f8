#include "nfield/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace nfield {

using std::numbers::pi;

std::size_t BinaryPattern::count_differences(const BinaryPattern& other) const {
  require_same_grid(spec, other.spec, "BinaryPattern::count_differences");
  std::size_t diff = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) diff += bits[k] != other.bits[k];
  return diff;
}

BinaryPattern binarize(const Field& h) {
  BinaryPattern p{h.spec(), std::vector<std::uint8_t>(h.size())};
  for (std::size_t k = 0; k < h.size(); ++k) p.bits[k] = h[k] > 0.0 ? 0 : 1;
  return p;
}

CorticalPoint retino_cortical(RetinalPoint p) {
  if (!(p.r > 0)) throw DomainError("retino_cortical: r must be positive");
  return {std::log(p.r), p.theta};
}

RetinalPoint cortico_retinal(CorticalPoint p) {
  double th = std::remainder(p.x2, 2 * pi);  // in [-pi, pi]
  if (th <= -pi) th += 2 * pi;
  return {std::exp(p.x1), th};
}

namespace {

constexpr std::uint8_t kWhite = 255;

int wrap(int i, int n) { return ((i % n) + n) % n; }

std::uint8_t gray(double v, double scale) {
  if (scale <= 0) return 128;
  const double g = 127.5 * (1.0 - v / scale);
  return static_cast<std::uint8_t>(std::clamp(std::lround(g), 0L, 255L));
}

template <class Pixel>
Image warp(const GridSpec& spec, const WarpOptions& opts, Pixel pixel) {
  if (spec.dim() != 2) throw DimensionError("warp_to_retina: 2D field required");
  if (opts.out_px < 64) throw InvalidArgument("warp_to_retina: out_px must be >= 64");
  const double L = spec.half_width();
  const double r_max = opts.r_max > 0 ? opts.r_max : std::exp(L);
  Image img{opts.out_px, opts.out_px, std::vector<std::uint8_t>(
                                          static_cast<std::size_t>(opts.out_px) * opts.out_px,
                                          kWhite)};
  const double h = 2 * r_max / opts.out_px;
  for (int row = 0; row < opts.out_px; ++row) {
    const double y = r_max - (row + 0.5) * h;
    for (int col = 0; col < opts.out_px; ++col) {
      const double x = -r_max + (col + 0.5) * h;
      const double r = std::hypot(x, y);
      if (r > r_max || r == 0.0) continue;
      const double x1 = std::log(r);
      if (x1 < -L || x1 > L) continue;
      img.pixels[static_cast<std::size_t>(row) * opts.out_px + col] =
          pixel(x1, std::atan2(y, x));
    }
  }
  return img;
}

}  // namespace

Image warp_to_retina(const Field& cortical, const WarpOptions& opts) {
  const GridSpec& s = cortical.spec();
  const int n = s.n();
  const double scale = norm(cortical, Norm::Linf);
  return warp(s, opts, [&](double x1, double x2) {
    const double fi = (x1 + s.half_width()) / s.dx();
    const double fj = (x2 + s.half_width()) / s.dx();
    const int i0 = static_cast<int>(std::floor(fi));
    const int j0 = static_cast<int>(std::floor(fj));
    const double ti = fi - i0, tj = fj - j0;
    auto v = [&](int i, int j) { return cortical.at(wrap(i, n), wrap(j, n)); };
    const double val = (1 - ti) * ((1 - tj) * v(i0, j0) + tj * v(i0, j0 + 1)) +
                       ti * ((1 - tj) * v(i0 + 1, j0) + tj * v(i0 + 1, j0 + 1));
    return gray(val, scale);
  });
}

Image warp_to_retina(const BinaryPattern& cortical, const WarpOptions& opts) {
  const GridSpec& s = cortical.spec;
  const int n = s.n();
  return warp(s, opts, [&](double x1, double x2) {
    const int i = wrap(static_cast<int>(std::lround((x1 + s.half_width()) / s.dx())), n);
    const int j = wrap(static_cast<int>(std::lround((x2 + s.half_width()) / s.dx())), n);
    return cortical.white(i, j) ? kWhite : std::uint8_t{0};
  });
}

Image field_image(const Field& u) {
  const GridSpec& s = u.spec();
  if (s.dim() != 2) throw DimensionError("field_image: 2D field required");
  const int n = s.n();
  const double scale = norm(u, Norm::Linf);
  Image img{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n)};
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      img.pixels[static_cast<std::size_t>(row) * n + col] = gray(u.at(col, n - 1 - row), scale);
    }
  }
  return img;
}

Image pattern_image(const BinaryPattern& p) {
  const int n = p.spec.n();
  Image img{n, n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n)};
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      img.pixels[static_cast<std::size_t>(row) * n + col] =
          p.white(col, n - 1 - row) ? kWhite : std::uint8_t{0};
    }
  }
  return img;
}

void write_pgm(const std::filesystem::path& path, const Image& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_pgm: cannot open " + path.string());
  os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  os.write(reinterpret_cast<const char*>(img.pixels.data()),
           static_cast<std::streamsize>(img.pixels.size()));
}

void write_pbm(const std::filesystem::path& path, const Image& img) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_pbm: cannot open " + path.string());
  os << "P4\n" << img.width << ' ' << img.height << '\n';
  const int row_bytes = (img.width + 7) / 8;
  std::vector<char> row(static_cast<std::size_t>(row_bytes));
  for (int r = 0; r < img.height; ++r) {
    std::fill(row.begin(), row.end(), 0);
    for (int c = 0; c < img.width; ++c) {
      // PBM: 1 = black.
      if (img.at(r, c) < 128) row[c / 8] = static_cast<char>(row[c / 8] | (0x80 >> (c % 8)));
    }
    os.write(row.data(), row_bytes);
  }
}

void write_pbm(const std::filesystem::path& path, const BinaryPattern& p) {
  write_pbm(path, pattern_image(p));
}

}  // namespace nfield
