#include "nfield/kernels.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <sstream>

namespace nfield {

using std::numbers::pi;

DoGParams DoGParams::canonical() {
  return {1.0, std::sqrt(1.0 / (2.0 * pi * pi)), std::sqrt(1.0 / (pi * pi))};
}

void DoGParams::validate() const {
  std::ostringstream os;
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    os << "kappa must be positive (got " << kappa << ")";
  } else if (!(sigma1 > 0.0) || !(sigma2 > sigma1) || !std::isfinite(sigma2)) {
    os << "need 0 < sigma1 < sigma2 (got " << sigma1 << ", " << sigma2 << ")";
  } else if (!(sigma1 * std::sqrt(kappa) < sigma2)) {
    os << "need sigma1 sqrt(kappa) < sigma2 (got " << sigma1 * std::sqrt(kappa)
       << " >= " << sigma2 << ")";
  } else {
    return;
  }
  throw InvalidParams("DoGParams: " + os.str());
}

bool DoGParams::is_canonical(double tol) const {
  const auto c = canonical();
  return std::abs(kappa - c.kappa) <= tol && std::abs(sigma1 - c.sigma1) <= tol &&
         std::abs(sigma2 - c.sigma2) <= tol;
}

double dog_value(const DoGParams& p, double x) {
  const double s1 = p.sigma1 * p.sigma1;
  const double s2 = p.sigma2 * p.sigma2;
  const double r2 = x * x;
  return std::exp(-r2 / (2 * s1)) / (p.sigma1 * std::sqrt(2 * pi)) -
         p.kappa * std::exp(-r2 / (2 * s2)) / (p.sigma2 * std::sqrt(2 * pi));
}

double dog_value(const DoGParams& p, double x1, double x2) {
  const double s1 = p.sigma1 * p.sigma1;
  const double s2 = p.sigma2 * p.sigma2;
  const double r2 = x1 * x1 + x2 * x2;
  return std::exp(-r2 / (2 * s1)) / (2 * pi * s1) -
         p.kappa * std::exp(-r2 / (2 * s2)) / (2 * pi * s2);
}

double omega_hat(const DoGParams& p, double xi) {
  const double q = 2 * pi * pi * xi * xi;
  return std::exp(-q * p.sigma1 * p.sigma1) - p.kappa * std::exp(-q * p.sigma2 * p.sigma2);
}

double omega_hat(const DoGParams& p, double xi1, double xi2) {
  return omega_hat(p, std::hypot(xi1, xi2));
}

KernelConstants constants(const DoGParams& p) {
  p.validate();
  const double s1 = p.sigma1 * p.sigma1;
  const double s2 = p.sigma2 * p.sigma2;
  KernelConstants k{};
  // With kappa sigma2^2 <= sigma1^2 the transform peaks at the origin.
  const double lg = std::log(p.kappa * s2 / s1);
  k.q_c = lg > 0 ? std::sqrt(lg / (2 * pi * pi * (s2 - s1))) : 0.0;
  k.mu_c = 1.0 / omega_hat(p, k.q_c);
  k.theta = p.sigma1 * p.sigma2 * std::sqrt(2 * std::log(s2 / (p.kappa * s1)) / (s2 - s1));
  const double t2 = k.theta * k.theta;
  k.l1_norm = (1 - p.kappa) + 2 * (p.kappa * std::exp(-t2 / (2 * s2)) - std::exp(-t2 / (2 * s1)));
  k.mu_0 = 1.0 / k.l1_norm;
  return k;
}

double l1_norm_quadrature(const DoGParams& p) {
  p.validate();
  using boost::math::quadrature::gauss_kronrod;
  const double theta = constants(p).theta;
  auto radial = [&](double r) { return 2 * pi * r * std::abs(dog_value(p, r, 0.0)); };
  const double r_end = 40.0 * p.sigma2;
  double total = 0.0;
  // Split at the sign change so each piece is smooth.
  const double cuts[] = {0.0, theta, 2 * theta, 4 * theta, r_end};
  for (int i = 0; i + 1 < 5; ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    total += gauss_kronrod<double, 61>::integrate(radial, cuts[i], cuts[i + 1], 15, 1e-14);
  }
  return total;
}

Field sample_kernel(const DoGParams& p, const GridSpec& spec) {
  if (spec.dim() == 1) {
    return sample(spec, [&](double x) { return dog_value(p, x); });
  }
  return sample(spec, [&](double x1, double x2) { return dog_value(p, x1, x2); });
}

}  // namespace nfield
