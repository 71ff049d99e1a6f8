#pragma once

// Closed forms for the 1D kernel K with transform omega1_hat / (1 - omega1_hat)
// under the canonical parameters (kappa = mu = 1, 2 pi^2 sigma1^2 = 1,
// 2 pi^2 sigma2^2 = 2): poles, residue series, Heaviside response and zeros.

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

namespace nfield::analytic {

using cplx = std::complex<double>;

/// pi sqrt(2 pi / 3): decay and oscillation rate of the leading residue term.
double rate();
/// sqrt(3 / (2 pi)) = pi / rate(): half-period of the leading cosine.
double half_period();

/// 1 - exp(-z^2) + exp(-2 z^2)
cplx h_eval(cplx z);
/// omega1_hat(z) / h(z); throws NearPole when |h(z)| < 1e-12.
cplx khat_eval(cplx z);

struct PoleResidue {
  cplx pole;
  cplx residue;   ///< residue of K_hat at the pole
  char family;    ///< 'p' (c_k) or 'q' (d_k)
  int k;
  int l;          ///< quarter-turn index: pole = base * i^l
};

double c_k(int k);  ///< sqrt(1 + 6k)
double d_k(int k);  ///< sqrt(6k - 1)

/// p_{k,l} for k = 0..k_max and q_{k,l} for k = 1..k_max, l = 0..3.
std::vector<PoleResidue> poles_and_residues(int k_max);

enum class SeriesKind { K, BHeaviside };

/// Value of a truncated residue series with the number of terms used and a
/// rigorous bound on the dropped tail.
struct SeriesValue {
  double value;
  double tail_bound;
  int terms;
};

/// Truncated residue series for x > 0. The scaled variants return
/// exp(rate() x) K(x) / (2 sqrt pi) and exp(rate() x) b(x) pi / sqrt 3, which
/// stay O(1) for large x.
class SeriesKernel {
 public:
  explicit SeriesKernel(SeriesKind kind) : kind_(kind) {}
  SeriesKind kind() const noexcept { return kind_; }

  /// Terms needed so that the scaled tail bound drops below tol at x.
  int terms_for(double x, double tol) const;
  /// Bound on the scaled tail after n_terms c- and d-terms.
  double tail_bound(double x, int n_terms) const;

  SeriesValue scaled(double x, double tol = 1e-15) const;
  /// d/dx of scaled(x).
  SeriesValue scaled_derivative(double x, double tol = 1e-15) const;
  /// Bounds on |d/dx scaled| and |d^2/dx^2 scaled| over [x_lo, inf).
  double lipschitz1(double x_lo) const;
  double lipschitz2(double x_lo) const;
  /// Leading phase: pi/12 for K, pi/3 for b.
  double phase() const;

 private:
  SeriesKind kind_;
};

/// K(x) by the residue series, for x != 0 (even in x). Falls back to
/// K_quadrature_eval for |x| < 0.05. Throws DomainError at x = 0.
double K_series_eval(double x, double tol = 1e-14);
SeriesValue K_series(double x, double tol = 1e-14);

/// 2 int_0^Xi cos(2 pi xi x) K_hat(xi) d xi with Xi = 6.5. Throws
/// QuadratureError when the error estimate exceeds abs_tol.
double K_quadrature_eval(double x, double abs_tol = 1e-10);

/// Derivative K'(x) from the differentiated series, x > 0.
double K_prime_series_eval(double x, double tol = 1e-14);

/// Response b = H(-.) + K * H(-.) at x > 0 by the residue series. Throws
/// DomainError for x <= 0; use b(x) = 1 - b(-x) there.
double b_heaviside_eval(double x, double tol = 1e-14);

/// Series remainders: S(x) = x (scaled K - cos(pi/12 + A)) and
/// T(x) = sqrt3 e^A K'(x) / (4 pi^2) + sin(pi/3 + A).
double remainder_S(double x);
double remainder_T(double x);
double remainder_S_bound();
double remainder_T_bound(double x);

struct ZeroRow {
  int k;
  double bracket_lo;
  double bracket_hi;
  double zero;
  double reference;
  double bound;
  bool unique;  ///< uniqueness certificate succeeded
  bool pass;    ///< unique and |reference - zero| <= bound
};

struct ZeroTable {
  SeriesKind kind;
  std::vector<ZeroRow> rows;
  bool all_pass() const;
};

/// Certified zeros of K (or b) in the brackets between consecutive extrema of
/// the leading cosine. Throws StructuralError if a bracket has no sign change.
ZeroTable locate_zeros(SeriesKind kind, int k_max);

void write_zero_table_csv(const std::filesystem::path& path, const ZeroTable& table);

struct NegativeControlReport {
  int dog_sign_changes = 0;
  int gaussian_sign_changes = 0;
  double gaussian_min = 0.0;      ///< min of the Gaussian K-analogue on (0.1, 10)
  double gaussian_mu = 0.5;
  double evenness_error = 0.0;    ///< max |K(x) - K(-x)| over both kernels
  bool pass() const { return gaussian_sign_changes == 0 && dog_sign_changes >= 10; }
};

/// Gaussian K-analogue: omega1_hat = exp(-xi^2) and K_hat = omega1_hat /
/// (1 - mu omega1_hat), summed as a positive Gaussian series.
double gaussian_K_eval(double x, double mu = 0.5);

/// Sign changes of both kernels on (0.1, 10) sampled with step 1e-3.
NegativeControlReport gaussian_negative_control();

}  // namespace nfield::analytic
