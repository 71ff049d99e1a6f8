#include "nfield/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nfield {

namespace {

SpectralOperator kernel_operator(const Model& m, const GridSpec& spec) {
  return SpectralOperator::from_kernel(sample_kernel(m.params, spec));
}

Field response(const Model& m, const Field& u) {
  if (m.kind.variant() == ResponseVariant::Linear) return u;
  return map(u, [&](double s) { return m.kind.f(s); });
}

void check_coupling(const Model& m, const StationaryOptions& o) {
  const KernelConstants k = constants(m.params);
  const double a = std::abs(m.mu);
  std::ostringstream os;
  if (o.balanced_l2) {
    if (std::abs(m.params.kappa - 1.0) > 1e-12) {
      throw ContractionViolation("balanced L2 mode requires kappa = 1");
    }
    if (a < k.mu_c) return;
    os << "|mu| = " << a << " must be below mu_c = " << k.mu_c;
  } else {
    if (a < k.mu_0) return;
    os << "|mu| = " << a << " must be below mu_0 = " << k.mu_0;
  }
  throw ContractionViolation(os.str());
}

// Picard iteration u <- phi(u) with a sup-norm stopping rule.
template <class Map>
StationaryResult picard(Field u, const Map& phi, const StationaryOptions& o,
                        const char* what) {
  SolverReport rep;
  double prev = -1.0;
  for (int it = 1; it <= o.max_iter; ++it) {
    Field next = phi(u);
    Field diff = next - u;
    const double upd = norm(diff, Norm::Linf);
    const double scale = std::max(1.0, norm(next, Norm::Linf));
    // Ratios of round-off-sized updates carry no information.
    if (prev > 1e-9 * scale) {
      rep.contraction_ratio_estimate = std::max(rep.contraction_ratio_estimate, upd / prev);
    }
    prev = upd;
    u = std::move(next);
    rep.iterations = it;
    rep.residual = upd;
    if (upd <= o.tol) return {std::move(u), rep};
  }
  std::ostringstream os;
  os << what << ": no convergence after " << o.max_iter << " iterations (residual "
     << rep.residual << ")";
  throw NonConvergence(os.str(), rep);
}

class Stepper {
 public:
  Stepper(const Field& input, const Model& m, double h, Scheme scheme)
      : input_(input), model_(m), op_(kernel_operator(m, input.spec())), h_(h),
        scheme_(scheme), decay_(std::exp(-h)), gain_(-std::expm1(-h)),
        phi2_((h + std::expm1(-h)) / h) {}

  Field rhs(const Field& a) const {
    Field n = op_.apply(response(model_, a));
    n *= model_.mu;
    n += input_;
    return n;
  }

  Field step(const Field& a) const {
    const Field na = rhs(a);
    Field b = a * decay_;
    b += na * gain_;
    if (scheme_ == Scheme::ExponentialEuler) return b;
    Field corr = rhs(b) - na;
    corr *= phi2_;
    b += corr;
    return b;
  }

 private:
  const Field& input_;
  const Model& model_;
  SpectralOperator op_;
  double h_;
  Scheme scheme_;
  double decay_, gain_, phi2_;
};

int step_count(double t_final, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("integrate: dt must be positive");
  if (!(t_final >= 0.0)) throw InvalidArgument("integrate: t_final must be nonnegative");
  return std::max(1, static_cast<int>(std::ceil(t_final / dt - 1e-9)));
}

}  // namespace

StationaryResult stationary_state(const Field& input, const Model& model,
                                  const StationaryOptions& opts) {
  check_coupling(model, opts);
  const SpectralOperator op = kernel_operator(model, input.spec());
  Field u0 = input;
  if (opts.initial_guess) {
    require_same_grid(opts.initial_guess->spec(), input.spec(), "stationary_state");
    u0 = *opts.initial_guess;
  }
  auto phi = [&](const Field& u) {
    Field v = op.apply(response(model, u));
    v *= model.mu;
    v += input;
    return v;
  };
  return picard(std::move(u0), phi, opts, "stationary_state");
}

StationaryResult linearized_response(const Field& a_base, const Field& h,
                                     const Model& model, const StationaryOptions& opts) {
  require_same_grid(a_base.spec(), h.spec(), "linearized_response");
  check_coupling(model, opts);
  const SpectralOperator op = kernel_operator(model, h.spec());
  const Field slope = map(a_base, [&](double s) { return model.kind.f_prime(s); });
  auto phi = [&](const Field& u) {
    Field v = op.apply(hadamard(slope, u));
    v *= model.mu;
    v += h;
    return v;
  };
  Field u0 = opts.initial_guess ? *opts.initial_guess : h;
  return picard(std::move(u0), phi, opts, "linearized_response");
}

EvolutionResult integrate(const Field& a0, const Field& input, const Model& model,
                          double t_final, const IntegrateOptions& opts) {
  require_same_grid(a0.spec(), input.spec(), "integrate");
  const int steps = step_count(t_final, opts.dt);
  const double h = t_final / steps;
  const Stepper stepper(input, model, h, opts.scheme);

  EvolutionResult res{{}, std::nullopt, {}, a0};
  if (opts.log_stride > 0 && std::abs(model.mu) < constants(model.params).mu_0) {
    res.stationary = stationary_state(input, model, opts.stationary).state;
  }
  auto log = [&](double t, const Field& a) {
    if (res.stationary) res.decay_log.emplace_back(t, norm(a - *res.stationary, opts.log_norm));
  };

  res.snapshots.emplace_back(0.0, a0);
  log(0.0, a0);
  double next_snap = opts.snapshot_interval > 0 ? opts.snapshot_interval : 2 * t_final + 1;
  Field a = a0;
  double t_valid = 0.0;
  for (int k = 1; k <= steps; ++k) {
    try {
      a = stepper.step(a);
    } catch (const SamplingError&) {
      std::ostringstream os;
      os << "integrate: non-finite state after t = " << t_valid;
      throw BlowUp(os.str(), t_valid);
    }
    const double t = k == steps ? t_final : k * h;
    t_valid = t;
    if (k == steps) break;
    if (t >= next_snap - 0.5 * h) {
      res.snapshots.emplace_back(t, a);
      next_snap += opts.snapshot_interval;
    }
    if (opts.log_stride > 0 && k % opts.log_stride == 0) log(t, a);
  }
  if (t_final > 0.0) {
    res.snapshots.emplace_back(t_final, a);
    log(t_final, a);
  }
  res.final_state = std::move(a);
  return res;
}

Field flow(const Field& a0, const Field& input, const Model& model, double t_final,
           double dt, Scheme scheme) {
  require_same_grid(a0.spec(), input.spec(), "flow");
  if (t_final == 0.0) return a0;
  const int steps = step_count(t_final, dt);
  const Stepper stepper(input, model, t_final / steps, scheme);
  Field a = a0;
  for (int k = 1; k <= steps; ++k) {
    try {
      a = stepper.step(a);
    } catch (const SamplingError&) {
      throw BlowUp("flow: non-finite state", (k - 1) * (t_final / steps));
    }
  }
  return a;
}

double sup_bound_g1(double mu, double mu0, const ResponseKind& kind) {
  if (!kind.bounded()) throw InvalidArgument("sup_bound_g1: response must be bounded");
  if (!(mu0 > 0.0) || !(std::abs(mu) < mu0)) {
    throw ContractionViolation("sup_bound_g1: need |mu| < mu0");
  }
  const double r = mu / mu0;
  double x = 1.0 + std::abs(r);
  for (int it = 0; it < 10000; ++it) {
    const double next = 1.0 + r * kind.f(x);
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x))) return next;
    x = next;
  }
  throw Error("sup_bound_g1: iteration did not settle (bounded f should converge)");
}

Gamma0Result gamma0_estimate(const Model& model, const GridSpec& spec, double lambda,
                             const Gamma0Options& opts) {
  if (spec.dim() != 2) throw DimensionError("gamma0_estimate: 2D grid required");
  const Field pf = sample(spec, [&](double, double x2) {
    return std::cos(2 * std::numbers::pi * lambda * x2);
  });
  auto holds = [&](double g) {
    return norm(stationary_state(g * pf, model, opts.stationary).state, Norm::Linf) <= 1.0;
  };
  Gamma0Result res;
  const int m = std::max(2, opts.scan_points);
  int first_false = -1;
  for (int i = 1; i <= m; ++i) {
    const bool ok = holds(opts.gamma_max * i / m);
    if (!ok && first_false < 0) first_false = i;
    if (ok && first_false >= 0) res.non_monotone_warning = true;
  }
  if (first_false < 0) {
    res.value = opts.gamma_max;
    res.censored = true;
    return res;
  }
  double lo = opts.gamma_max * (first_false - 1) / m;
  double hi = opts.gamma_max * first_false / m;
  while (hi - lo > opts.tol) {
    const double mid = 0.5 * (lo + hi);
    (holds(mid) ? lo : hi) = mid;
  }
  res.value = lo;
  return res;
}

}  // namespace nfield
