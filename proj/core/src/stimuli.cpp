#include "nfield/stimuli.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace nfield {

using std::numbers::pi;

Stimulus Stimulus::funnel(double lambda) {
  Stimulus s;
  s.kind = StimulusKind::Funnel;
  s.lambda = lambda;
  return s;
}

Stimulus Stimulus::tunnel(double lambda) {
  Stimulus s;
  s.kind = StimulusKind::Tunnel;
  s.lambda = lambda;
  return s;
}

Stimulus Stimulus::mackay_rays(double epsilon, double theta, double lambda) {
  Stimulus s;
  s.kind = StimulusKind::MacKayRays;
  s.epsilon = epsilon;
  s.theta = theta;
  s.lambda = lambda;
  return s;
}

Stimulus Stimulus::mackay_target(double epsilon, double lambda) {
  Stimulus s;
  s.kind = StimulusKind::MacKayTarget;
  s.epsilon = epsilon;
  s.lambda = lambda;
  return s;
}

StimulusKind parse_stimulus_kind(std::string_view text) {
  if (text == "funnel") return StimulusKind::Funnel;
  if (text == "tunnel") return StimulusKind::Tunnel;
  if (text == "mackay_rays" || text == "mackay-rays") return StimulusKind::MacKayRays;
  if (text == "mackay_target" || text == "mackay-target") return StimulusKind::MacKayTarget;
  if (text == "custom") return StimulusKind::Custom;
  throw InvalidArgument("unknown stimulus kind '" + std::string(text) + "'");
}

std::string_view to_string(StimulusKind kind) {
  switch (kind) {
    case StimulusKind::Funnel: return "funnel";
    case StimulusKind::Tunnel: return "tunnel";
    case StimulusKind::MacKayRays: return "mackay_rays";
    case StimulusKind::MacKayTarget: return "mackay_target";
    case StimulusKind::Custom: return "custom";
  }
  return "?";
}

Field generate(const Stimulus& stim, const GridSpec& spec) {
  if (spec.dim() != 2) throw DimensionError("generate: stimuli live on 2D grids");
  if (!(stim.lambda > 0)) throw InvalidArgument("generate: lambda must be positive");
  if (!(stim.epsilon >= 0)) throw InvalidArgument("generate: epsilon must be nonnegative");
  const double w = 2 * pi * stim.lambda;
  const double eps = stim.epsilon;
  switch (stim.kind) {
    case StimulusKind::Funnel:
      return sample(spec, [&](double, double x2) { return std::cos(w * x2); });
    case StimulusKind::Tunnel:
      return sample(spec, [&](double x1, double) { return std::cos(w * x1); });
    case StimulusKind::MacKayRays:
      return sample(spec, [&](double x1, double x2) {
        return std::cos(w * x2) + eps * heaviside(stim.theta - x1);
      });
    case StimulusKind::MacKayTarget: {
      const auto& o = stim.offsets;
      return sample(spec, [&](double x1, double x2) {
        return std::cos(w * x1) + eps * (heaviside(-x2 - o[0]) + heaviside(x2 - o[1]) +
                                         heaviside(o[2] - std::abs(x2)));
      });
    }
    case StimulusKind::Custom:
      if (!stim.custom) throw InvalidArgument("generate: custom stimulus without a function");
      return sample(spec, stim.custom);
  }
  throw InvalidArgument("generate: unknown stimulus");
}

Field random_smooth_field(const GridSpec& spec, std::uint64_t seed, double sup_norm,
                          double max_freq, int modes) {
  std::mt19937_64 rng(seed);
  const int kmax = std::max(1, static_cast<int>(std::floor(max_freq * 2 * spec.half_width())));
  std::uniform_int_distribution<int> kd(-kmax, kmax);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  struct Mode {
    double f1, f2, amp, phase;
  };
  std::vector<Mode> ms;
  for (int m = 0; m < modes; ++m) {
    const int k1 = spec.dim() == 2 ? kd(rng) : 0;
    const int k2 = kd(rng);
    ms.push_back({spec.frequency(k1), spec.frequency(k2), ud(rng) * 2 - 1, ud(rng) * 2 * pi});
  }
  auto eval = [&](double x1, double x2) {
    double v = 0.0;
    for (const auto& m : ms) v += m.amp * std::cos(2 * pi * (m.f1 * x1 + m.f2 * x2) + m.phase);
    return v;
  };
  Field u = spec.dim() == 2 ? sample(spec, eval)
                            : sample(spec, [&](double x) { return eval(0.0, x); });
  const double s = norm(u, Norm::Linf);
  if (s > 0) u *= sup_norm / s;
  return u;
}

}  // namespace nfield
