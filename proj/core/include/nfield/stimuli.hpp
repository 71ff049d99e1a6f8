#pragma once

// Sensory inputs on the cortical plane.

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>

#include "nfield/grid.hpp"

namespace nfield {

enum class StimulusKind { Funnel, Tunnel, MacKayRays, MacKayTarget, Custom };

/// H(s) with the left-closed convention H(0) = 1.
inline double heaviside(double s) { return s >= 0.0 ? 1.0 : 0.0; }

struct Stimulus {
  StimulusKind kind = StimulusKind::Funnel;
  double lambda = 2.5;
  double epsilon = 0.0;
  /// Cutoff of the rays perturbation epsilon H(theta - x1).
  double theta = 0.0;
  /// Target perturbation H(-x2 - o0) + H(x2 - o1) + H(o2 - |x2|).
  std::array<double, 3> offsets{9.75, 9.75, 0.25};
  std::function<double(double, double)> custom;

  static Stimulus funnel(double lambda = 2.5);
  static Stimulus tunnel(double lambda = 2.5);
  static Stimulus mackay_rays(double epsilon, double theta = 0.0, double lambda = 2.5);
  static Stimulus mackay_target(double epsilon, double lambda = 2.5);
};

StimulusKind parse_stimulus_kind(std::string_view text);
std::string_view to_string(StimulusKind kind);

/// Pointwise evaluation on a 2D grid.
Field generate(const Stimulus& stim, const GridSpec& spec);

/// Sum of a few random grid-commensurate Fourier modes with |xi| <= max_freq,
/// scaled to the given sup norm. Deterministic in seed.
Field random_smooth_field(const GridSpec& spec, std::uint64_t seed,
                          double sup_norm = 1.0, double max_freq = 1.0, int modes = 8);

}  // namespace nfield
