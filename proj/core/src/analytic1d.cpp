#include "nfield/analytic1d.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "nfield/error.hpp"

namespace nfield::analytic {

using std::numbers::pi;

namespace {

constexpr double kQuadratureCutoff = 6.5;  // K_hat(6.5) ~ 5e-19
constexpr double kSeriesMinX = 0.05;

cplx omega1_hat(cplx z) { return std::exp(-z * z) - std::exp(-2.0 * z * z); }

double khat_real(double xi) {
  const double w = std::exp(-xi * xi) - std::exp(-2 * xi * xi);
  return w / (1.0 - w);
}

// One term a e^{-(r-1)A} cos(psi + s r A) of a scaled series.
struct TermShape {
  double amp_power;  // a = r^{-amp_power}
  double psi;
  double s;
};

struct Shapes {
  double lead_phase;
  TermShape c;
  TermShape d;
  int tail_power;  // 1 for K, 2 for b
};

Shapes shapes(SeriesKind kind) {
  if (kind == SeriesKind::K) {
    // sin(pi/12 - d A) = cos(-5pi/12 - d A)
    return {pi / 12, {1, pi / 12, 1}, {1, -5 * pi / 12, -1}, 1};
  }
  // -sin(pi/6 + d A) = cos(2pi/3 + d A)
  return {pi / 3, {2, pi / 3, 1}, {2, 2 * pi / 3, 1}, 2};
}

double term_value(const TermShape& t, double r, double A) {
  return std::pow(r, -t.amp_power) * std::exp(-(r - 1) * A) * std::cos(t.psi + t.s * r * A);
}

// d/dx of term_value, using dA/dx = rate().
double term_deriv(const TermShape& t, double r, double A) {
  const double th = t.psi + t.s * r * A;
  return rate() * std::pow(r, -t.amp_power) * std::exp(-(r - 1) * A) *
         (-(r - 1) * std::cos(th) - t.s * r * std::sin(th));
}

// Sum over j > N of e^{-A d_j} d_j^{-p}, times e^A, bounded by the integral
// from N of the decreasing integrand.
double tail_sum(double A, int N, int p) {
  const double dn = d_k(N);
  return std::exp(-A * (dn - 1)) / (3 * A * std::pow(dn, p - 1));
}

// Same for e^{-A d_j} (no denominator): (1/3) e^{-A d_N} (d_N/A + 1/A^2).
double tail_sum0(double A, int N) {
  const double dn = d_k(N);
  return std::exp(-A * (dn - 1)) * (dn / A + 1 / (A * A)) / 3;
}

}  // namespace

double rate() { return pi * std::sqrt(2 * pi / 3); }
double half_period() { return std::sqrt(3 / (2 * pi)); }

double c_k(int k) { return std::sqrt(1.0 + 6.0 * k); }
double d_k(int k) { return std::sqrt(6.0 * k - 1.0); }

cplx h_eval(cplx z) { return 1.0 - omega1_hat(z); }

cplx khat_eval(cplx z) {
  const cplx h = h_eval(z);
  if (std::abs(h) < 1e-12) {
    std::ostringstream os;
    os << "khat_eval: z = " << z << " is within 1e-12 of a pole (|h| = " << std::abs(h) << ")";
    throw NearPole(os.str());
  }
  return omega1_hat(z) / h;
}

std::vector<PoleResidue> poles_and_residues(int k_max) {
  if (k_max < 1) throw InvalidArgument("poles_and_residues: k_max must be >= 1");
  const cplx unit = std::polar(1.0, pi / 4) * std::sqrt(pi / 3);
  const cplx quarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  auto residue = [](cplx z) {
    const cplx hp = 2.0 * z * std::exp(-z * z) - 4.0 * z * std::exp(-2.0 * z * z);
    return omega1_hat(z) / hp;
  };
  std::vector<PoleResidue> out;
  for (int k = 0; k <= k_max; ++k) {
    for (int l = 0; l < 4; ++l) {
      const cplx p = c_k(k) * unit * quarter[l];
      out.push_back({p, residue(p), 'p', k, l});
    }
  }
  for (int k = 1; k <= k_max; ++k) {
    for (int l = 0; l < 4; ++l) {
      const cplx q = d_k(k) * unit * quarter[l];
      out.push_back({q, residue(q), 'q', k, l});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residue series

double SeriesKernel::phase() const { return shapes(kind_).lead_phase; }

double SeriesKernel::tail_bound(double x, int n_terms) const {
  const double A = rate() * x;
  return 2 * tail_sum(A, std::max(1, n_terms), shapes(kind_).tail_power);
}

int SeriesKernel::terms_for(double x, double tol) const {
  if (!(x > 0)) throw DomainError("SeriesKernel: x must be positive");
  int hi = 1;
  while (tail_bound(x, hi) >= tol) {
    if (hi > (1 << 24)) throw DomainError("SeriesKernel: x too small for the residue series");
    hi *= 2;
  }
  int lo = hi / 2;
  if (lo < 1) return hi;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (tail_bound(x, mid) < tol ? hi : lo) = mid;
  }
  return hi;
}

SeriesValue SeriesKernel::scaled(double x, double tol) const {
  const Shapes sh = shapes(kind_);
  const double A = rate() * x;
  const int N = terms_for(x, tol);
  double sum = 0.0;
  // Add the smallest terms first.
  for (int k = N; k >= 1; --k) {
    sum += term_value(sh.c, c_k(k), A) + term_value(sh.d, d_k(k), A);
  }
  sum += std::cos(sh.lead_phase + A);
  return {sum, tail_bound(x, N), N};
}

SeriesValue SeriesKernel::scaled_derivative(double x, double tol) const {
  const Shapes sh = shapes(kind_);
  const double A = rate() * x;
  // Derivative tail (with the factor rate()) relative to the value tail.
  auto dtail = [&](int N) {
    return sh.tail_power == 1 ? 4 * rate() * tail_sum0(A, N) : 4 * rate() * tail_sum(A, N, 1);
  };
  int N = terms_for(x, tol);
  while (dtail(N) >= tol && N < (1 << 24)) N *= 2;
  double sum = 0.0;
  for (int k = N; k >= 1; --k) {
    sum += term_deriv(sh.c, c_k(k), A) + term_deriv(sh.d, d_k(k), A);
  }
  sum += -rate() * std::sin(sh.lead_phase + A);
  return {sum, dtail(N), N};
}

namespace {

// Sum of f(r) over all non-leading rates until terms drop below 1e-20.
template <class F>
double rate_sum(F f) {
  double total = 0.0;
  for (int k = 1; k < (1 << 22); ++k) {
    const double t = f(c_k(k)) + f(d_k(k));
    total += t;
    if (t < 1e-20 && k > 8) return total + 2 * t;
  }
  return total;
}

}  // namespace

double SeriesKernel::lipschitz1(double x_lo) const {
  const Shapes sh = shapes(kind_);
  const double A = rate() * x_lo;
  const double rest = rate_sum([&](double r) {
    return std::pow(r, -sh.c.amp_power) * (2 * r - 1) * std::exp(-(r - 1) * A);
  });
  return rate() * (1.0 + rest);
}

double SeriesKernel::lipschitz2(double x_lo) const {
  const Shapes sh = shapes(kind_);
  const double A = rate() * x_lo;
  const double rest = rate_sum([&](double r) {
    return std::pow(r, -sh.c.amp_power) * (2 * r - 1) * (2 * r - 1) * std::exp(-(r - 1) * A);
  });
  return rate() * rate() * (1.0 + rest);
}

SeriesValue K_series(double x, double tol) {
  x = std::abs(x);
  if (x == 0.0) throw DomainError("K_series_eval: the residue series is not defined at x = 0");
  if (x < kSeriesMinX) {
    const double qtol = std::max(tol, 1e-10);
    return {K_quadrature_eval(x, qtol), qtol, 0};
  }
  const double A = rate() * x;
  const double pref = 2 * std::sqrt(pi) * std::exp(-A);
  const SeriesValue s = SeriesKernel(SeriesKind::K).scaled(x, std::max(tol / pref, 1e-17));
  return {pref * s.value, pref * s.tail_bound, s.terms};
}

double K_series_eval(double x, double tol) { return K_series(x, tol).value; }

double K_prime_series_eval(double x, double tol) {
  if (!(x > 0)) throw DomainError("K_prime_series_eval: x must be positive");
  const double A = rate() * x;
  const double pref = 2 * std::sqrt(pi) * std::exp(-A);
  const SeriesKernel sk(SeriesKind::K);
  const double t = std::max(tol / pref, 1e-17);
  return pref * (sk.scaled_derivative(x, t).value - rate() * sk.scaled(x, t).value);
}

double K_quadrature_eval(double x, double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  const double ax = std::abs(x);
  const double piece = ax > 0 ? std::min(0.5, 0.5 / ax) : 0.5;
  const int pieces = static_cast<int>(std::ceil(kQuadratureCutoff / piece));
  auto f = [&](double xi) { return 2 * std::cos(2 * pi * xi * ax) * khat_real(xi); };
  double total = 0.0, err_total = 0.0;
  for (int i = 0; i < pieces; ++i) {
    const double a = kQuadratureCutoff * i / pieces;
    const double b = kQuadratureCutoff * (i + 1) / pieces;
    double err = 0.0;
    total += gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-15, &err);
    err_total += err;
  }
  if (!(err_total <= abs_tol)) {
    std::ostringstream os;
    os << "K_quadrature_eval: error estimate " << err_total << " exceeds " << abs_tol;
    throw QuadratureError(os.str(), total, err_total);
  }
  return total;
}

double b_heaviside_eval(double x, double tol) {
  if (!(x > 0)) throw DomainError("b_heaviside_eval: series requires x > 0");
  if (x < kSeriesMinX) {
    // b(x) = -int_0^x K = -2 int_0^Xi sin(2 pi xi x) / (2 pi xi) K_hat(xi) d xi.
    using boost::math::quadrature::gauss_kronrod;
    auto f = [&](double xi) {
      const double arg = 2 * pi * xi;
      const double w = arg * x < 1e-8 ? x : std::sin(arg * x) / arg;
      return -2 * w * khat_real(xi);
    };
    return gauss_kronrod<double, 61>::integrate(f, 0.0, kQuadratureCutoff, 15, 1e-14);
  }
  const double A = rate() * x;
  const double pref = std::sqrt(3.0) / pi * std::exp(-A);
  const SeriesValue s = SeriesKernel(SeriesKind::BHeaviside).scaled(x, std::max(tol / pref, 1e-17));
  return pref * s.value;
}

double remainder_S(double x) {
  const double A = rate() * x;
  return x * (SeriesKernel(SeriesKind::K).scaled(x).value - std::cos(pi / 12 + A));
}

double remainder_T(double x) {
  const double A = rate() * x;
  const SeriesKernel sk(SeriesKind::K);
  // e^A K' = 2 sqrt(pi) (g' - rate g) with g the scaled kernel.
  const double eAKp = 2 * std::sqrt(pi) * (sk.scaled_derivative(x).value - rate() * sk.scaled(x).value);
  return std::sqrt(3.0) * eAKp / (4 * pi * pi) + std::sin(pi / 3 + A);
}

double remainder_S_bound() { return std::sqrt(6.0) / (3 * pi * pi); }

double remainder_T_bound(double x) { return (1 + rate() * x) / (pi * pi * pi * x * x); }

// ---------------------------------------------------------------------------
// Zeros

bool ZeroTable::all_pass() const {
  return !rows.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const ZeroRow& r) { return r.pass; });
}

namespace {

int sign(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

// At most one zero in [a, b]: every cell either provably avoids zero or lies
// where the derivative has one fixed sign.
bool certify_unique(const SeriesKernel& sk, double a, double b, int cells) {
  const double L1 = sk.lipschitz1(a);
  const double L2 = sk.lipschitz2(a);
  const double dx = (b - a) / cells;
  std::vector<SeriesValue> g(cells + 1), dg(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    const double x = i == cells ? b : a + i * dx;
    g[i] = sk.scaled(x);
    dg[i] = sk.scaled_derivative(x);
  }
  int slope_sign = 0;
  for (int i = 0; i < cells; ++i) {
    const double m0 = std::abs(g[i].value) - g[i].tail_bound;
    const double m1 = std::abs(g[i + 1].value) - g[i + 1].tail_bound;
    if (sign(g[i].value) == sign(g[i + 1].value) && m0 > 0 && m1 > 0 && m0 + m1 > L1 * dx) {
      continue;
    }
    const double d0 = std::abs(dg[i].value) - dg[i].tail_bound;
    const double d1 = std::abs(dg[i + 1].value) - dg[i + 1].tail_bound;
    const int s = sign(dg[i].value);
    if (s == 0 || s != sign(dg[i + 1].value) || d0 <= 0 || d1 <= 0 || d0 + d1 <= L2 * dx) {
      return false;
    }
    if (slope_sign != 0 && s != slope_sign) return false;
    slope_sign = s;
  }
  return true;
}

}  // namespace

ZeroTable locate_zeros(SeriesKind kind, int k_max) {
  if (k_max < 1) throw InvalidArgument("locate_zeros: k_max must be >= 1");
  const SeriesKernel sk(kind);
  const double P = half_period();
  const double phase_frac = sk.phase() / pi;
  ZeroTable table{kind, {}};
  for (int k = 1; k <= k_max; ++k) {
    ZeroRow row{};
    row.k = k;
    row.bracket_lo = (k - phase_frac) * P;
    row.bracket_hi = (k + 1 - phase_frac) * P;
    row.reference = (k + 0.5 - phase_frac) * P;
    if (kind == SeriesKind::K) {
      row.bound = std::sqrt(3.0) / (pi * std::sqrt(2 * pi)) * std::asin(8 / (pi * (12.0 * k - 1)));
    } else {
      row.bound = std::sqrt(6.0) / (2 * pi * pi) *
                  std::asin(2 * std::sqrt(5.0) / (5 * pi * (3.0 * k - 1)));
    }
    double lo = row.bracket_lo, hi = row.bracket_hi;
    const SeriesValue glo = sk.scaled(lo), ghi = sk.scaled(hi);
    const int slo = sign(glo.value), shi = sign(ghi.value);
    if (slo == 0 || shi == 0 || slo == shi || std::abs(glo.value) <= glo.tail_bound ||
        std::abs(ghi.value) <= ghi.tail_bound) {
      std::ostringstream os;
      os << "locate_zeros: no certified sign change in bracket " << k << " (" << lo << ", "
         << hi << ")";
      throw StructuralError(os.str());
    }
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      const int sm = sign(sk.scaled(mid).value);
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      (sm == slo ? lo : hi) = mid;
    }
    row.zero = 0.5 * (lo + hi);
    for (int cells : {2000, 8000, 32000}) {
      if ((row.unique = certify_unique(sk, row.bracket_lo, row.bracket_hi, cells))) break;
    }
    row.pass = row.unique && row.zero > row.bracket_lo && row.zero < row.bracket_hi &&
               std::abs(row.reference - row.zero) <= row.bound;
    table.rows.push_back(row);
  }
  return table;
}

void write_zero_table_csv(const std::filesystem::path& path, const ZeroTable& table) {
  std::ofstream os(path);
  if (!os) throw Error("write_zero_table_csv: cannot open " + path.string());
  os << "k,bracket_lo,bracket_hi,zero,reference,bound,pass\n";
  os << std::setprecision(15);
  for (const auto& r : table.rows) {
    os << r.k << ',' << r.bracket_lo << ',' << r.bracket_hi << ',' << r.zero << ','
       << r.reference << ',' << r.bound << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Gaussian negative control

double gaussian_K_eval(double x, double mu) {
  if (!(mu > 0 && mu < 1)) throw InvalidArgument("gaussian_K_eval: need 0 < mu < 1");
  // K_hat = sum_n mu^n e^{-(n+1) xi^2}, each term inverting to a Gaussian.
  double total = 0.0, mun = 1.0;
  for (int n = 0; mun > 1e-18; ++n, mun *= mu) {
    total += mun * std::sqrt(pi / (n + 1)) * std::exp(-pi * pi * x * x / (n + 1));
  }
  return total;
}

NegativeControlReport gaussian_negative_control() {
  NegativeControlReport rep;
  const SeriesKernel sk(SeriesKind::K);
  int last_dog = 0, last_gauss = 0;
  rep.gaussian_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= 9900; ++i) {
    const double x = 0.1 + 1e-3 * i;
    const int sd = sign(sk.scaled(x).value);
    const double gv = gaussian_K_eval(x, rep.gaussian_mu);
    const int sg = sign(gv);
    rep.gaussian_min = std::min(rep.gaussian_min, gv);
    if (sd != 0) {
      if (last_dog != 0 && sd != last_dog) ++rep.dog_sign_changes;
      last_dog = sd;
    }
    if (sg != 0) {
      if (last_gauss != 0 && sg != last_gauss) ++rep.gaussian_sign_changes;
      last_gauss = sg;
    }
  }
  for (double x : {0.1, 0.5, 1.3, 4.0}) {
    rep.evenness_error = std::max({rep.evenness_error,
                                   std::abs(K_series_eval(x) - K_series_eval(-x)),
                                   std::abs(gaussian_K_eval(x, rep.gaussian_mu) -
                                            gaussian_K_eval(-x, rep.gaussian_mu))});
  }
  return rep;
}

}  // namespace nfield::analytic
