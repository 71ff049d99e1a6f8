#pragma once

// Time integration of da/dt = -a + mu omega * f(a) + I, the stationary-state
// map Psi, its differential, and the a-priori bounds.

#include <optional>
#include <utility>
#include <vector>

#include "nfield/grid.hpp"
#include "nfield/kernels.hpp"
#include "nfield/response.hpp"

namespace nfield {

/// The right-hand side data shared by every solver: coupling mu, response f
/// and kernel parameters.
struct Model {
  double mu = 1.0;
  ResponseKind kind = ResponseKind::linear();
  DoGParams params = DoGParams::canonical();
};

struct SolverReport {
  int iterations = 0;
  double residual = 0.0;
  double contraction_ratio_estimate = 0.0;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, SolverReport report)
      : Error(what), report_(report) {}
  const SolverReport& report() const noexcept { return report_; }

 private:
  SolverReport report_;
};

struct StationaryOptions {
  double tol = 1e-10;
  int max_iter = 500;
  /// Accept mu < mu_c when kappa = 1 (L^2 contraction) instead of mu < mu_0.
  bool balanced_l2 = false;
  std::optional<Field> initial_guess;
};

struct StationaryResult {
  Field state;
  SolverReport report;
};

/// Fixed point of u -> I + mu omega * f(u) by Picard iteration, started at I
/// unless an initial guess is given.
StationaryResult stationary_state(const Field& input, const Model& model,
                                  const StationaryOptions& opts = {});

/// Fixed point of u -> h + mu omega * (f'(a_base) u), i.e. DPsi(I) h at
/// a_base = Psi(I).
StationaryResult linearized_response(const Field& a_base, const Field& h,
                                     const Model& model,
                                     const StationaryOptions& opts = {});

enum class Scheme {
  ExponentialEuler,  ///< first order, exact integrating factor for -a
  ETD2,              ///< second-order exponential Runge-Kutta (Cox-Matthews)
};

struct IntegrateOptions {
  double dt = 0.01;
  Scheme scheme = Scheme::ExponentialEuler;
  /// Snapshot spacing in time; 0 keeps only t = 0 and t_final.
  double snapshot_interval = 0.0;
  /// Log ||a(t) - a_I|| every this many steps (0 disables the decay log).
  int log_stride = 1;
  Norm log_norm = Norm::Linf;
  StationaryOptions stationary;
};

struct EvolutionResult {
  std::vector<std::pair<double, Field>> snapshots;
  std::optional<Field> stationary;
  std::vector<std::pair<double, double>> decay_log;
  Field final_state;
};

/// Integrates from a0 over [0, t_final]. The step is shrunk so that t_final
/// is hit exactly. The decay log is filled when mu < mu_0.
EvolutionResult integrate(const Field& a0, const Field& input, const Model& model,
                          double t_final, const IntegrateOptions& opts = {});

/// Endpoint only, for callers that integrate many times (control shooting).
Field flow(const Field& a0, const Field& input, const Model& model, double t_final,
           double dt, Scheme scheme = Scheme::ExponentialEuler);

/// Limit g_1 of x -> 1 + (mu/mu0) f(x) started at 1 + mu/mu0.
double sup_bound_g1(double mu, double mu0, const ResponseKind& kind);

struct Gamma0Options {
  double gamma_max = 10.0;
  double tol = 1e-6;
  int scan_points = 20;
  StationaryOptions stationary;
};

struct Gamma0Result {
  double value = 0.0;
  bool censored = false;           ///< predicate held up to gamma_max
  bool non_monotone_warning = false;
};

/// Largest gamma with ||Psi(gamma P_F)||_inf <= 1, P_F = cos(2 pi lambda x2).
Gamma0Result gamma0_estimate(const Model& model, const GridSpec& spec, double lambda,
                             const Gamma0Options& opts = {});

}  // namespace nfield
