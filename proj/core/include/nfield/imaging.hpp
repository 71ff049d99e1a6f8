#pragma once

// Binary patterns, the log-polar retino-cortical map and raster output.

#include <cstdint>
#include <filesystem>
#include <vector>

#include "nfield/grid.hpp"

namespace nfield {

/// One bit per node: 0 (black) where h > 0, 1 (white) where h <= 0.
struct BinaryPattern {
  GridSpec spec;
  std::vector<std::uint8_t> bits;

  bool white(int i, int j) const { return bits[static_cast<std::size_t>(i) * spec.n() + j] != 0; }
  std::size_t count_differences(const BinaryPattern& other) const;
};

BinaryPattern binarize(const Field& h);

struct RetinalPoint {
  double r;
  double theta;
};
struct CorticalPoint {
  double x1;
  double x2;
};

/// r e^{i theta} -> (log r, theta). Throws DomainError for r <= 0.
CorticalPoint retino_cortical(RetinalPoint p);
/// (x1, x2) -> (e^{x1}, x2 wrapped to (-pi, pi]).
RetinalPoint cortico_retinal(CorticalPoint p);

/// 8-bit grayscale raster, row 0 at the top.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

struct WarpOptions {
  int out_px = 512;
  /// Radius of the displayed disk; <= 0 means e^L.
  double r_max = 0.0;
};

/// Retinal rendering: pixel (r, theta) samples the cortical field at
/// (log r, theta). Fields are interpolated bilinearly and shown with positive
/// values dark; patterns use the nearest node. Background is white.
Image warp_to_retina(const Field& cortical, const WarpOptions& opts = {});
Image warp_to_retina(const BinaryPattern& cortical, const WarpOptions& opts = {});

/// Cortical-plane rasters, x1 horizontal and x2 increasing upward.
Image field_image(const Field& u);
Image pattern_image(const BinaryPattern& p);

/// Binary PGM (P5, maxval 255).
void write_pgm(const std::filesystem::path& path, const Image& img);
/// Binary PBM (P4); pixels below 128 are black.
void write_pbm(const std::filesystem::path& path, const Image& img);
void write_pbm(const std::filesystem::path& path, const BinaryPattern& p);

}  // namespace nfield
