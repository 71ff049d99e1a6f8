#pragma once

// Difference-of-Gaussians connectivity kernel, its Fourier transform and the
// derived thresholds.

#include "nfield/grid.hpp"

namespace nfield {

struct DoGParams {
  double kappa = 1.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;

  /// kappa = 1, 2 pi^2 sigma1^2 = 1, 2 pi^2 sigma2^2 = 2.
  static DoGParams canonical();
  /// Throws InvalidParams unless 0 < sigma1 < sigma2, kappa > 0 and
  /// sigma1 sqrt(kappa) < sigma2.
  void validate() const;
  bool is_canonical(double tol = 1e-14) const;
};

struct KernelConstants {
  double q_c;      ///< radius where omega_hat peaks
  double mu_c;     ///< 1 / omega_hat(q_c)
  double mu_0;     ///< 1 / ||omega||_1
  double l1_norm;  ///< ||omega||_1 (2D)
  double theta;    ///< radius where omega changes sign
};

/// 1D kernel with 1/(sigma sqrt(2 pi)) normalization.
double dog_value(const DoGParams& p, double x);
/// 2D kernel with 1/(2 pi sigma^2) normalization.
double dog_value(const DoGParams& p, double x1, double x2);

/// exp(-2 pi^2 sigma1^2 xi^2) - kappa exp(-2 pi^2 sigma2^2 xi^2), same in 1D and 2D
/// with xi^2 = |xi|^2.
double omega_hat(const DoGParams& p, double xi);
double omega_hat(const DoGParams& p, double xi1, double xi2);

KernelConstants constants(const DoGParams& p);

/// ||omega||_1 in 2D by adaptive radial quadrature (oracle for the closed form).
double l1_norm_quadrature(const DoGParams& p);

/// The kernel sampled on spec with its origin at node n/2.
Field sample_kernel(const DoGParams& p, const GridSpec& spec);

}  // namespace nfield
