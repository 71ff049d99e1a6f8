#include "nfield/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace nfield {

GridSpec::GridSpec(double half_width, int n, int dim)
    : half_width_(half_width), n_(n), dim_(dim) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidArgument("GridSpec: half-width L must be positive and finite");
  }
  if (n <= 0 || n % 2 != 0) {
    throw InvalidArgument("GridSpec: n must be a positive even integer");
  }
  if (dim != 1 && dim != 2) {
    throw InvalidArgument("GridSpec: dimension must be 1 or 2");
  }
}

std::size_t GridSpec::size() const noexcept {
  const auto n = static_cast<std::size_t>(n_);
  return dim_ == 1 ? n : n * n;
}

double GridSpec::cell_volume() const noexcept {
  return dim_ == 1 ? dx() : dx() * dx();
}

bool GridSpec::interior(int j, double margin) const noexcept {
  return std::abs(coord(j)) <= half_width_ - margin;
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!(a == b)) {
    std::ostringstream os;
    os << what << ": grid mismatch (L=" << a.half_width() << ", n=" << a.n()
       << ", d=" << a.dim() << ") vs (L=" << b.half_width() << ", n=" << b.n()
       << ", d=" << b.dim() << ")";
    throw DimensionError(os.str());
  }
}

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) {
      std::ostringstream os;
      os << what << ": non-finite sample at flat index " << k;
      throw SamplingError(os.str());
    }
  }
}

}  // namespace

Field::Field(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
  if (values_.size() != spec_.size()) {
    throw DimensionError("Field: sample count does not match grid");
  }
  require_finite(values_, "Field");
}

Field Field::zeros(const GridSpec& spec) {
  return Field(spec, std::vector<double>(spec.size(), 0.0));
}

Field Field::constant(const GridSpec& spec, double value) {
  return Field(spec, std::vector<double>(spec.size(), value));
}

Field& Field::operator+=(const Field& other) {
  require_same_grid(spec_, other.spec_, "Field +=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  require_same_grid(spec_, other.spec_, "Field -=");
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
  return *this;
}

Field& Field::operator*=(double s) {
  for (auto& v : values_) v *= s;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double s, Field a) { return a *= s; }
Field operator*(Field a, double s) { return a *= s; }

Field hadamard(const Field& a, const Field& b) {
  require_same_grid(a.spec(), b.spec(), "hadamard");
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
  return Field(a.spec(), std::move(out));
}

Field map(const Field& u, const std::function<double(double)>& fn) {
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = fn(u[k]);
  return Field(u.spec(), std::move(out));
}

namespace detail {

namespace {
[[noreturn]] void throw_node(int i, int j, double x1, double x2, double v) {
  std::ostringstream os;
  os << "sample: non-finite value " << v << " at node (" << i;
  if (j >= 0) os << ", " << j;
  os << ") x = (" << x1;
  if (j >= 0) os << ", " << x2;
  os << ")";
  throw SamplingError(os.str());
}
}  // namespace

Field sample_1d(const GridSpec& spec, const std::function<double(double)>& fn) {
  std::vector<double> out(spec.size());
  for (int i = 0; i < spec.n(); ++i) {
    const double x = spec.coord(i);
    const double v = fn(x);
    if (!std::isfinite(v)) throw_node(i, -1, x, 0.0, v);
    out[static_cast<std::size_t>(i)] = v;
  }
  return Field(spec, std::move(out));
}

Field sample_2d(const GridSpec& spec,
                const std::function<double(double, double)>& fn) {
  const int n = spec.n();
  std::vector<double> out(spec.size());
  for (int i = 0; i < n; ++i) {
    const double x1 = spec.coord(i);
    for (int j = 0; j < n; ++j) {
      const double x2 = spec.coord(j);
      const double v = fn(x1, x2);
      if (!std::isfinite(v)) throw_node(i, j, x1, x2, v);
      out[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  return Field(spec, std::move(out));
}

}  // namespace detail

double norm(const Field& u, Norm p) {
  return norm_interior(u, p, -1.0);
}

double norm_interior(const Field& u, Norm p, double margin) {
  const GridSpec& s = u.spec();
  const int n = s.n();
  const bool all = margin < 0.0;
  double acc = 0.0;
  auto visit = [&](double v) {
    switch (p) {
      case Norm::L1: acc += std::abs(v); break;
      case Norm::L2: acc += v * v; break;
      case Norm::Linf: acc = std::max(acc, std::abs(v)); break;
    }
  };
  if (s.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      if (all || s.interior(i, margin)) visit(u.at(i));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      if (!all && !s.interior(i, margin)) continue;
      for (int j = 0; j < n; ++j) {
        if (all || s.interior(j, margin)) visit(u.at(i, j));
      }
    }
  }
  switch (p) {
    case Norm::L1: return acc * s.cell_volume();
    case Norm::L2: return std::sqrt(acc * s.cell_volume());
    case Norm::Linf: return acc;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// FFTW plumbing

namespace {

std::atomic<int> g_fft_threads{1};

struct FftwDeleter {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwDeleter>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

std::size_t half_size(const GridSpec& s) {
  const auto n = static_cast<std::size_t>(s.n());
  return s.dim() == 1 ? n / 2 + 1 : n * (n / 2 + 1);
}

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex g_plan_mutex;

// Plans are created once per shape and live for the process lifetime; FFTW
// planning is not thread-safe but execution with new-array variants is.
const Plans& plans_for(const GridSpec& s) {
  static std::map<std::tuple<int, int, int>, Plans> cache;
  const int threads = g_fft_threads.load();
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_tuple(s.n(), s.dim(), threads);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  static bool threads_ready = false;
  if (threads > 1 && !threads_ready) {
    fftw_init_threads();
    threads_ready = true;
  }
  if (threads_ready) fftw_plan_with_nthreads(threads);

  RealBuffer in(fftw_alloc_real(s.size()));
  ComplexBuffer out(fftw_alloc_complex(half_size(s)));
  Plans p;
  const unsigned flags = FFTW_ESTIMATE;
  if (s.dim() == 1) {
    p.forward = fftw_plan_dft_r2c_1d(s.n(), in.get(), out.get(), flags);
    p.backward = fftw_plan_dft_c2r_1d(s.n(), out.get(), in.get(), flags);
  } else {
    p.forward = fftw_plan_dft_r2c_2d(s.n(), s.n(), in.get(), out.get(), flags);
    p.backward = fftw_plan_dft_c2r_2d(s.n(), s.n(), out.get(), in.get(), flags);
  }
  return cache.emplace(key, p).first->second;
}

/// Forward transform of u into a freshly allocated half spectrum.
ComplexBuffer forward(const Field& u) {
  const GridSpec& s = u.spec();
  const Plans& p = plans_for(s);
  RealBuffer in(fftw_alloc_real(s.size()));
  std::copy(u.values().begin(), u.values().end(), in.get());
  ComplexBuffer out(fftw_alloc_complex(half_size(s)));
  fftw_execute_dft_r2c(p.forward, in.get(), out.get());
  return out;
}

/// Backward transform (destroys spec_data), normalized by 1/n^d.
Field backward(const GridSpec& s, ComplexBuffer spec_data) {
  const Plans& p = plans_for(s);
  RealBuffer out(fftw_alloc_real(s.size()));
  fftw_execute_dft_c2r(p.backward, spec_data.get(), out.get());
  const double scale = 1.0 / static_cast<double>(s.size());
  std::vector<double> values(s.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = out[k] * scale;
  return Field(s, std::move(values));
}

int signed_index(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

void set_fft_threads(int threads) { g_fft_threads.store(std::max(1, threads)); }
int fft_threads() { return g_fft_threads.load(); }

double spectral_energy(const Field& u) {
  const GridSpec& s = u.spec();
  ComplexBuffer hat = forward(u);
  const int n = s.n();
  const int nh = n / 2 + 1;
  const int rows = s.dim() == 1 ? 1 : n;
  double acc = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < nh; ++k) {
      const auto& c = hat[static_cast<std::size_t>(r) * nh + k];
      const double w = (k == 0 || k == n / 2) ? 1.0 : 2.0;
      acc += w * (c[0] * c[0] + c[1] * c[1]);
    }
  }
  return acc * s.cell_volume() / static_cast<double>(s.size());
}

SpectralOperator::SpectralOperator(const GridSpec& spec)
    : spec_(spec), coeffs_(half_size(spec)) {}

SpectralOperator::SpectralOperator(const GridSpec& spec, const Multiplier& m)
    : SpectralOperator(spec) {
  const int n = spec.n();
  const int nh = n / 2 + 1;
  const int rows = spec.dim() == 1 ? 1 : n;
  for (int r = 0; r < rows; ++r) {
    const double xi1 = spec.dim() == 1 ? 0.0 : spec.frequency(signed_index(r, n));
    for (int k = 0; k < nh; ++k) {
      const double xi_last = spec.frequency(k);
      const std::complex<double> v =
          spec.dim() == 1 ? m(xi_last, 0.0) : m(xi1, xi_last);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os << "multiplier is non-finite at xi = (";
        if (spec.dim() == 1) {
          os << xi_last;
        } else {
          os << xi1 << ", " << xi_last;
        }
        os << ")";
        throw MultiplierError(os.str());
      }
      coeffs_[static_cast<std::size_t>(r) * nh + k] = v;
    }
  }
}

SpectralOperator SpectralOperator::from_kernel(const Field& kernel) {
  const GridSpec& s = kernel.spec();
  SpectralOperator op(s);
  ComplexBuffer hat = forward(kernel);
  const int n = s.n();
  const int nh = n / 2 + 1;
  const int rows = s.dim() == 1 ? 1 : n;
  const double w = s.cell_volume();
  for (int r = 0; r < rows; ++r) {
    for (int k = 0; k < nh; ++k) {
      // Kernel origin sits at node n/2: the shift contributes (-1)^(r+k).
      const double sign = ((r + k) % 2 == 0) ? 1.0 : -1.0;
      const auto idx = static_cast<std::size_t>(r) * nh + k;
      op.coeffs_[idx] = std::complex<double>(hat[idx][0], hat[idx][1]) * (sign * w);
    }
  }
  return op;
}

Field SpectralOperator::apply(const Field& u) const {
  require_same_grid(spec_, u.spec(), "SpectralOperator::apply");
  ComplexBuffer hat = forward(u);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const std::complex<double> v = coeffs_[k] * std::complex<double>(hat[k][0], hat[k][1]);
    hat[k][0] = v.real();
    hat[k][1] = v.imag();
  }
  return backward(spec_, std::move(hat));
}

Field convolve(const Field& kernel, const Field& u) {
  require_same_grid(kernel.spec(), u.spec(), "convolve");
  return SpectralOperator::from_kernel(kernel).apply(u);
}

Field apply_multiplier(const SpectralOperator::Multiplier& m, const Field& u) {
  return SpectralOperator(u.spec(), m).apply(u);
}

}  // namespace nfield
