#pragma once

// Uniform periodic grids on [-L, L]^d (d = 1 or 2), real sample fields, and
// spectral convolution / Fourier-multiplier application.

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include "nfield/error.hpp"

namespace nfield {

/// Sampling of the square [-L, L]^d with n nodes per axis. Node j sits at
/// x_j = -L + j*dx (cell-corner convention), so x_{n/2} = 0.
class GridSpec {
 public:
  GridSpec(double half_width, int n, int dim = 2);

  double half_width() const noexcept { return half_width_; }
  int n() const noexcept { return n_; }
  int dim() const noexcept { return dim_; }
  double dx() const noexcept { return 2.0 * half_width_ / n_; }
  /// n^d
  std::size_t size() const noexcept;
  /// Quadrature weight dx^d.
  double cell_volume() const noexcept;
  double coord(int j) const noexcept { return -half_width_ + j * dx(); }
  int origin_index() const noexcept { return n_ / 2; }
  /// Frequency represented by signed index k: xi_k = k / (2L).
  double frequency(int k) const noexcept { return k / (2.0 * half_width_); }
  /// Whether |x_j| <= L - margin, i.e. the node is away from the wrap seam.
  bool interior(int j, double margin) const noexcept;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double half_width_;
  int n_;
  int dim_;
};

/// Real samples of a cortical function on a GridSpec, row-major with axis 0
/// (x1) slowest. Every sample is finite.
class Field {
 public:
  Field(GridSpec spec, std::vector<double> values);

  static Field zeros(const GridSpec& spec);
  static Field constant(const GridSpec& spec, double value);

  const GridSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double at(int i) const noexcept { return values_[static_cast<std::size_t>(i)]; }
  double at(int i, int j) const noexcept {
    return values_[static_cast<std::size_t>(i) * spec_.n() + j];
  }

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);

  /// Moves the samples out; the field is left empty.
  std::vector<double> release() && { return std::move(values_); }

 private:
  GridSpec spec_;
  std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);
Field operator*(Field a, double s);

/// Pointwise product.
Field hadamard(const Field& a, const Field& b);

/// Pointwise map; the result must stay finite.
Field map(const Field& u, const std::function<double(double)>& fn);

/// Throws DimensionError unless the two specs are identical.
void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what);

namespace detail {
Field sample_1d(const GridSpec& spec, const std::function<double(double)>& fn);
Field sample_2d(const GridSpec& spec, const std::function<double(double, double)>& fn);
}  // namespace detail

/// Evaluates fn at every node. fn takes (x) on a 1D grid and (x1, x2) on a 2D
/// grid. Throws SamplingError naming the first non-finite node.
template <class Fn>
Field sample(const GridSpec& spec, Fn&& fn) {
  if constexpr (std::is_invocable_r_v<double, Fn, double, double>) {
    if (spec.dim() != 2) throw DimensionError("sample: 2D function on a 1D grid");
    return detail::sample_2d(spec, std::forward<Fn>(fn));
  } else {
    static_assert(std::is_invocable_r_v<double, Fn, double>,
                  "sample: fn must be callable as fn(x) or fn(x1, x2)");
    if (spec.dim() != 1) throw DimensionError("sample: 1D function on a 2D grid");
    return detail::sample_1d(spec, std::forward<Fn>(fn));
  }
}

enum class Norm { L1, L2, Linf };

/// Discrete L^p norm with dx^d weights (p < inf) or max |u_j|.
double norm(const Field& u, Norm p);
/// Same, restricted to nodes at distance >= margin from the wrap seam along
/// every axis.
double norm_interior(const Field& u, Norm p, double margin);

/// Sum of |DFT(u)_k|^2 * dx^d / n^d over all represented frequencies. Equals
/// norm(u, L2)^2 by Parseval.
double spectral_energy(const Field& u);

/// Sets the FFTW thread count used by plans created afterwards.
void set_fft_threads(int threads);
int fft_threads();

/// A diagonal operator in Fourier space, stored on the half spectrum used by
/// the real-to-complex transform. Frequencies are xi_k = k/(2L) with signed k.
class SpectralOperator {
 public:
  /// m(xi1, xi2); xi2 is 0 on 1D grids.
  using Multiplier = std::function<std::complex<double>(double, double)>;

  SpectralOperator(const GridSpec& spec, const Multiplier& m);
  /// The operator u -> kernel * u (periodic convolution scaled by dx^d).
  static SpectralOperator from_kernel(const Field& kernel);

  const GridSpec& spec() const noexcept { return spec_; }
  Field apply(const Field& u) const;
  std::span<const std::complex<double>> coefficients() const noexcept {
    return coeffs_;
  }

 private:
  explicit SpectralOperator(const GridSpec& spec);

  GridSpec spec_;
  std::vector<std::complex<double>> coeffs_;
};

/// Periodic discrete convolution approximating the integral of
/// kernel(x - y) u(y) dy. The kernel is sampled with its origin at node n/2.
Field convolve(const Field& kernel, const Field& u);

/// Inverse transform of m(xi) * u^(xi).
Field apply_multiplier(const SpectralOperator::Multiplier& m, const Field& u);

}  // namespace nfield
