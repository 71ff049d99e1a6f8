#include "nfield/control.hpp"

#include <boost/math/special_functions/lambert_w.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "nfield/field_io.hpp"

namespace nfield {

namespace {

double mu0_of(const Model& m) { return constants(m.params).mu_0; }

void require_contraction(double mu, const DoGParams& params, const char* what) {
  const double mu0 = constants(params).mu_0;
  if (!(std::abs(mu) < mu0)) {
    std::ostringstream os;
    os << what << ": |mu| = " << std::abs(mu) << " must be below mu_0 = " << mu0;
    throw ContractionViolation(os.str());
  }
}

void check_problem(const ControlProblem& p) {
  require_same_grid(p.a0.spec(), p.a_target.spec(), "ControlProblem");
  if (!(p.horizon > 0) || !std::isfinite(p.horizon)) {
    throw InvalidArgument("ControlProblem: horizon must be positive");
  }
}

// lambda(xi) = mu omega_hat(xi) - 1
auto eigenvalue_for(const GridSpec& spec, double mu, const DoGParams& params) {
  return [mu, params, d = spec.dim()](double xi1, double xi2) {
    return mu * (d == 1 ? omega_hat(params, xi1) : omega_hat(params, xi1, xi2)) - 1.0;
  };
}

double sup_error(const Field& a, const Field& b) { return norm(a - b, Norm::Linf); }

Field initial_guess(const ControlProblem& p) {
  // Input that makes the midpoint move at the average speed (a1 - a0) / T.
  Field mid = 0.5 * (p.a0 + p.a_target);
  const Field kernel = sample_kernel(p.model.params, mid.spec());
  Field fm = map(mid, [&](double s) { return p.model.kind.f(s); });
  Field guess = (1.0 / p.horizon) * (p.a_target - p.a0);
  guess += mid;
  guess -= p.model.mu * convolve(kernel, fm);
  return guess;
}

}  // namespace

Field semigroup_apply(double t, const Field& u, double mu, const DoGParams& params) {
  if (!(t >= 0)) throw InvalidArgument("semigroup_apply: t must be nonnegative");
  if (t == 0) return u;
  const auto lam = eigenvalue_for(u.spec(), mu, params);
  return apply_multiplier(
      [&](double x1, double x2) { return std::complex<double>(std::exp(t * lam(x1, x2))); }, u);
}

Field linear_endpoint(const Field& a0, const Field& control, double T, double mu,
                      const DoGParams& params) {
  require_same_grid(a0.spec(), control.spec(), "linear_endpoint");
  const auto lam = eigenvalue_for(a0.spec(), mu, params);
  Field out = semigroup_apply(T, a0, mu, params);
  out += apply_multiplier(
      [&](double x1, double x2) {
        const double l = lam(x1, x2);
        return std::complex<double>(l == 0.0 ? T : std::expm1(T * l) / l);
      },
      control);
  return out;
}

ControlResult linear_control(const ControlProblem& problem, double tol) {
  check_problem(problem);
  require_contraction(problem.model.mu, problem.model.params, "linear_control");
  const double T = problem.horizon;
  const auto lam = eigenvalue_for(problem.a0.spec(), problem.model.mu, problem.model.params);
  auto denom = [&](double x1, double x2) {
    const double d = std::expm1(T * lam(x1, x2));
    if (std::abs(d) < 1e-14) {
      std::ostringstream os;
      os << "linear_control: 1 - e^{T lambda} vanishes at xi = (" << x1 << ", " << x2 << ")";
      throw NearSingularity(os.str());
    }
    return d;
  };
  Field control = apply_multiplier(
      [&](double x1, double x2) {
        return std::complex<double>(lam(x1, x2) / denom(x1, x2));
      },
      problem.a_target);
  control -= apply_multiplier(
      [&](double x1, double x2) {
        const double l = lam(x1, x2);
        return std::complex<double>(l * std::exp(T * l) / denom(x1, x2));
      },
      problem.a0);
  const Field end = linear_endpoint(problem.a0, control, T, problem.model.mu, problem.model.params);
  ControlResult res;
  res.endpoint_error = sup_error(end, problem.a_target);
  res.iterations = 1;
  res.success = res.endpoint_error <= tol;
  res.schedule.push_back({0.0, T, std::move(control)});
  return res;
}

double tau_max(double mu, double mu0) {
  if (!(mu0 > 0)) throw InvalidArgument("tau_max: mu0 must be positive");
  const double c = 1.0 + std::abs(mu) / mu0;
  return boost::math::lambert_w0(1.0) / c;
}

ControlResult small_time_control(const ControlProblem& problem, const ShootingOptions& opts) {
  check_problem(problem);
  const Model& m = problem.model;
  require_contraction(m.mu, m.params, "small_time_control");
  const double tau = problem.horizon;
  const double tmax = tau_max(m.mu, mu0_of(m));
  if (tau > tmax) {
    std::ostringstream os;
    os << "small_time_control: horizon " << tau << " exceeds tau_max = " << tmax;
    throw HorizonTooLong(os.str());
  }

  ControlResult res;
  if (m.kind.variant() == ResponseVariant::Linear) {
    // I = tau^{-1} phi(tau lambda)^{-1} (a1 - e^{tau A} a0), phi(z) = (e^z - 1)/z,
    // with phi^{-1} = sum_j (1 - phi)^j.
    const auto lam = eigenvalue_for(problem.a0.spec(), m.mu, m.params);
    int max_terms = 0;
    auto inv_phi = [&](double x1, double x2) {
      const double z = tau * lam(x1, x2);
      const double phi = z == 0.0 ? 1.0 : std::expm1(z) / z;
      const double q = 1.0 - phi;
      if (!(std::abs(q) < 1)) throw NearSingularity("small_time_control: Neumann series diverges");
      double sum = 1.0, term = 1.0;
      int j = 0;
      while (std::abs(term) > 1e-17 && j < 500) {
        term *= q;
        sum += term;
        ++j;
      }
      max_terms = std::max(max_terms, j);
      return std::complex<double>(sum / tau);
    };
    Field rhs = problem.a_target - semigroup_apply(tau, problem.a0, m.mu, m.params);
    Field control = apply_multiplier(inv_phi, rhs);
    const Field end = linear_endpoint(problem.a0, control, tau, m.mu, m.params);
    res.endpoint_error = sup_error(end, problem.a_target);
    res.iterations = max_terms;
    res.success = res.endpoint_error <= opts.tol;
    res.schedule.push_back({0.0, tau, std::move(control)});
    return res;
  }

  const double dt = opts.dt > 0 ? opts.dt : tau / 100;
  Field control = initial_guess(problem);
  double damping = opts.damping;
  double best_err = std::numeric_limits<double>::infinity();
  Field best = control;
  std::vector<double> history;
  const double target = 0.1 * opts.tol;
  int it = 0;
  for (it = 1; it <= opts.max_iter; ++it) {
    const Field end = flow(problem.a0, control, m, tau, dt, opts.scheme);
    Field r = problem.a_target - end;
    const double err = norm(r, Norm::Linf);
    if (err < best_err) {
      best_err = err;
      best = control;
    } else {
      // Residual grew: restart from the best iterate with half the step.
      damping *= 0.5;
      control = best;
      r = problem.a_target - flow(problem.a0, control, m, tau, dt, opts.scheme);
    }
    history.push_back(best_err);
    if (best_err <= target) break;
    const std::size_t h = history.size();
    if (h > 10 && history[h - 1] > 0.99 * history[h - 11]) {
      ControlResult partial;
      partial.endpoint_error = best_err;
      partial.iterations = it;
      partial.schedule.push_back({0.0, tau, best});
      throw ShootingStalled("small_time_control: shooting stagnated",
                            {it, best_err, 0.0}, std::move(partial));
    }
    control += (damping / tau) * r;
  }
  const bool converged = best_err <= target;
  const Field end = flow(problem.a0, best, m, tau, dt / 10, opts.scheme);
  res.endpoint_error = sup_error(end, problem.a_target);
  res.iterations = std::min(it, opts.max_iter);
  res.success = converged && res.endpoint_error <= opts.tol;
  res.schedule.push_back({0.0, tau, std::move(best)});
  if (!converged) {
    throw ShootingStalled("small_time_control: iteration cap reached",
                          {res.iterations, best_err, 0.0}, res);
  }
  return res;
}

ControlResult two_phase_control(const ControlProblem& problem, double tau,
                                const ShootingOptions& opts) {
  check_problem(problem);
  const double T = problem.horizon;
  if (!(tau > 0 && tau < T)) throw InvalidArgument("two_phase_control: need 0 < tau < T");
  const Model& m = problem.model;
  const bool linear = m.kind.variant() == ResponseVariant::Linear;
  const Field zero = Field::zeros(problem.a0.spec());
  const double dt = opts.dt > 0 ? opts.dt : 0.01;

  auto free_decay = [&](double step) {
    return linear ? semigroup_apply(T - tau, problem.a0, m.mu, m.params)
                  : flow(problem.a0, zero, m, T - tau, step, opts.scheme);
  };
  const Field a_mid = free_decay(dt);
  ControlResult sub = small_time_control({a_mid, problem.a_target, tau, m}, opts);

  ControlResult res;
  res.iterations = sub.iterations;
  if (linear) {
    res.endpoint_error = sub.endpoint_error;
  } else {
    const Field mid_fine = free_decay(dt / 10);
    const double dt2 = (opts.dt > 0 ? opts.dt : tau / 100) / 10;
    const Field end = flow(mid_fine, sub.control(), m, tau, dt2, opts.scheme);
    res.endpoint_error = sup_error(end, problem.a_target);
  }
  res.success = res.endpoint_error <= opts.tol;
  res.schedule.push_back({0.0, T - tau, zero});
  res.schedule.push_back({T - tau, T, sub.control()});
  return res;
}

void write_schedule_csv(const std::filesystem::path& path, const ControlResult& result) {
  std::ofstream os(path);
  if (!os) throw Error("write_schedule_csv: cannot open " + path.string());
  os << "t_start,t_end,field\n" << std::setprecision(17);
  for (std::size_t k = 0; k < result.schedule.size(); ++k) {
    const auto& seg = result.schedule[k];
    const std::string name = path.stem().string() + "_" + std::to_string(k) + ".nfld";
    write_field(path.parent_path() / name, seg.control);
    os << seg.t_start << ',' << seg.t_end << ',' << name << '\n';
  }
}

}  // namespace nfield
