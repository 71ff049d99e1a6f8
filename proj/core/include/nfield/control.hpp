#pragma once

// Exact controllability: steering a0 to a_target with a time-constant input.

#include <filesystem>
#include <string>
#include <vector>

#include "nfield/dynamics.hpp"

namespace nfield {

struct ControlProblem {
  Field a0;
  Field a_target;
  double horizon;
  Model model;
};

struct ControlSegment {
  double t_start;
  double t_end;
  Field control;
};

struct ControlResult {
  std::vector<ControlSegment> schedule;
  double endpoint_error = 0.0;  ///< sup norm of a(T) - a_target
  int iterations = 0;
  bool success = false;

  const Field& control() const { return schedule.back().control; }
};

class ShootingStalled : public NonConvergence {
 public:
  ShootingStalled(const std::string& what, SolverReport report, ControlResult best)
      : NonConvergence(what, report), best_(std::move(best)) {}
  const ControlResult& best() const noexcept { return best_; }

 private:
  ControlResult best_;
};

/// e^{tA} u with A u = -u + mu omega * u, as the multiplier e^{t(mu omega_hat - 1)}.
Field semigroup_apply(double t, const Field& u, double mu, const DoGParams& params);

/// a(T) = e^{TA} a0 + A^{-1}(e^{TA} - Id) I for the linear system, spectrally.
Field linear_endpoint(const Field& a0, const Field& control, double T, double mu,
                      const DoGParams& params);

/// I = (e^{TA} - Id)^{-1} A (a1 - e^{TA} a0). The model's response is ignored
/// (linear system). Throws NearSingularity when |1 - e^{T lambda}| < 1e-14.
ControlResult linear_control(const ControlProblem& problem, double tol = 1e-8);

/// Largest tau with tau (1 + mu/mu0) e^{(1 + mu/mu0) tau} < 1.
double tau_max(double mu, double mu0);

struct ShootingOptions {
  double tol = 1e-4;
  int max_iter = 50;
  /// Synthesis step; <= 0 means horizon / 100. Verification uses dt / 10.
  double dt = 0.0;
  Scheme scheme = Scheme::ETD2;
  double damping = 1.0;
};

/// Linear response: Neumann-series inversion of the phi-function multiplier.
/// Otherwise: shooting I <- I + tau^{-1}(a_target - a_I(tau)). Throws
/// HorizonTooLong when the horizon exceeds tau_max.
ControlResult small_time_control(const ControlProblem& problem,
                                 const ShootingOptions& opts = {});

/// I = 0 on [0, T - tau], then the small-time control on (T - tau, T].
ControlResult two_phase_control(const ControlProblem& problem, double tau,
                                const ShootingOptions& opts = {});

/// Rows (t_start, t_end, file) with one field file per segment written next
/// to the CSV as <stem>_<index>.nfld.
void write_schedule_csv(const std::filesystem::path& path, const ControlResult& result);

}  // namespace nfield
