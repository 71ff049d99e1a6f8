#include "app/verify.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

#include "nfield/analytic1d.hpp"
#include "nfield/control.hpp"
#include "nfield/imaging.hpp"
#include "nfield/stimuli.hpp"
#include "nfield/symmetry.hpp"

namespace nfield::app {

namespace {

using std::numbers::pi;

// value <= threshold means pass; callers pass deviations, not raw values.
struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass() const { return value <= threshold; }
};

using Suite = std::vector<Check> (*)(const std::filesystem::path&);

Model model(double mu, ResponseKind k = ResponseKind::linear()) {
  return Model{mu, std::move(k), DoGParams::canonical()};
}

std::vector<Check> kernels_suite(const std::filesystem::path&) {
  const auto p = DoGParams::canonical();
  const auto k = constants(p);
  const auto arg = boost::math::tools::brent_find_minima([&](double xi) { return -omega_hat(p, xi); },
                                                         0.1, 3.0, 52);
  return {
      {"mu_0 deviation from 2", std::abs(k.mu_0 - 2), 1e-12},
      {"mu_c deviation from 4", std::abs(k.mu_c - 4), 1e-12},
      {"l1 closed form vs quadrature", std::abs(l1_norm_quadrature(p) - k.l1_norm), 1e-6},
      {"q_c vs numerical argmax", std::abs(arg.first - k.q_c), 1e-7},
      {"mu_0 - mu_c", k.mu_0 - k.mu_c, 0.0},
  };
}

std::vector<Check> analytic_suite(const std::filesystem::path& dir) {
  double series = 0, s_max = 0;
  for (int k = 0; k < 50; ++k) {
    const double x = 0.1 * std::pow(50.0, k / 49.0);
    series = std::max(series, std::abs(analytic::K_series_eval(x) - analytic::K_quadrature_eval(x)));
    s_max = std::max(s_max, std::abs(analytic::remainder_S(x)));
  }
  const auto tk = analytic::locate_zeros(analytic::SeriesKind::K, 20);
  const auto tb = analytic::locate_zeros(analytic::SeriesKind::BHeaviside, 20);
  analytic::write_zero_table_csv(dir / "zeros_K.csv", tk);
  analytic::write_zero_table_csv(dir / "zeros_b.csv", tb);
  auto failing = [](const analytic::ZeroTable& t) {
    int n = 0;
    for (const auto& r : t.rows) n += !r.pass;
    return static_cast<double>(n);
  };
  const auto nc = analytic::gaussian_negative_control();
  return {
      {"max |K series - quadrature| on [0.1, 5]", series, 1e-8},
      {"max |S(x)|", s_max, analytic::remainder_S_bound()},
      {"failing K zero rows", failing(tk), 0},
      {"failing b zero rows", failing(tb), 0},
      {"Gaussian kernel sign changes on (0.1, 10)", static_cast<double>(nc.gaussian_sign_changes), 0},
  };
}

// Sign alternations of the rays-minus-funnel state along x2 ~ 0.1, x1 in [2.5, 6].
int rays_alternations(const ResponseKind& kind, const GridSpec& s) {
  const StationaryOptions o{.tol = 1e-14, .max_iter = 200};
  const Model m = model(1.0, kind);
  const Field d = stationary_state(generate(Stimulus::mackay_rays(0.025, 2.0), s), m, o).state -
                  stationary_state(generate(Stimulus::funnel(), s), m, o).state;
  const int j = static_cast<int>(std::lround((0.1 + s.half_width()) / s.dx()));
  int changes = 0;
  double prev = 0;
  for (int i = 0; i < s.n(); ++i) {
    const double x = s.coord(i), v = d.at(i, j);
    if (x < 2.5 || x > 6 || v == 0) continue;
    if (prev != 0 && (v > 0) != (prev > 0)) ++changes;
    prev = v;
  }
  return changes;
}

std::vector<Check> dynamics_suite(const std::filesystem::path&) {
  std::vector<Check> out;
  {
    const GridSpec s(10, 512);
    const Field I = generate(Stimulus::funnel(), s);
    const auto r = stationary_state(I, model(1.0), {.tol = 1e-13});
    const double scale = 1.0 / (1.0 - omega_hat(DoGParams::canonical(), 0.0, 2.5));
    out.push_back({"linear funnel state vs closed form (512^2)", norm(r.state - scale * I, Norm::Linf), 1e-8});
  }
  {
    const GridSpec s(10, 128);
    double worst = 0;
    for (int k = 0; k < 3; ++k) {
      IntegrateOptions o;
      o.stationary.tol = 1e-13;
      const auto ev = integrate(random_smooth_field(s, 10 + k, 3.0), random_smooth_field(s, 20 + k),
                                model(1.0, ResponseKind::rational()), 10.0, o);
      const double d0 = ev.decay_log.front().second;
      for (const auto& [t, d] : ev.decay_log) worst = std::max(worst, d / (d0 * std::exp(-0.5 * t)));
    }
    out.push_back({"decay ratio / e^{-t/2}", worst, 1.02});
  }
  {
    const GridSpec s(5, 64);
    const double g1 = sup_bound_g1(1.0, 2.0, ResponseKind::rational());
    const auto ev = integrate(random_smooth_field(s, 30, 4.0), generate(Stimulus::funnel(), s),
                              model(1.0, ResponseKind::rational()), 40.0, {.snapshot_interval = 1.0});
    double limsup = 0;
    for (const auto& [t, a] : ev.snapshots)
      if (t >= 30) limsup = std::max(limsup, norm(a, Norm::Linf));
    out.push_back({"long-run sup norm minus g1", limsup - g1, 0.02});
  }
  {
    const GridSpec s(10, 512);
    const int lin = rays_alternations(ResponseKind::linear(), s);
    const int rat = rays_alternations(ResponseKind::rational(), s);
    out.push_back({"5 - rays alternations (linear)", 5.0 - lin, 0});
    out.push_back({"|rational - linear| alternations", std::abs(double(rat - lin)), 0});
  }
  return out;
}

std::vector<Check> control_suite(const std::filesystem::path& dir) {
  const GridSpec big(10, 256);
  const auto lin = linear_control({random_smooth_field(big, 1), random_smooth_field(big, 2), 1.0, model(1.0)});
  const GridSpec small(5, 64);
  const Model rat = model(1.0, ResponseKind::rational());
  const auto st = small_time_control({random_smooth_field(small, 3), random_smooth_field(small, 4), 0.1, rat});
  const auto tp = two_phase_control({random_smooth_field(small, 5), random_smooth_field(small, 6), 5.0, rat}, 0.1);
  write_schedule_csv(dir / "schedule.csv", tp);
  return {
      {"linear control endpoint error (256^2)", lin.endpoint_error, 1e-8},
      {"small-time control endpoint error (64^2, tau 0.1)", st.endpoint_error, 1e-4},
      {"two-phase control endpoint error (T 5)", tp.endpoint_error, 1e-4},
      {"tau 0.1 minus tau_max", 0.1 - tau_max(1.0, 2.0), 0},
  };
}

std::vector<Check> symmetry_suite(const std::filesystem::path&) {
  const GridSpec s(5, 128);
  const Model m = model(1.0, ResponseKind::rational());
  const StationaryOptions o{.tol = 1e-12};
  const Field I = random_smooth_field(s, 7, 1.5, 1.5);
  const Field psi = stationary_state(I, m, o).state;
  double worst = 0;
  for (const auto& g : {GroupElement::translation(7, -3), GroupElement::rotation90(1), GroupElement::reflect_x1(),
                        GroupElement::reflect_x2()}) {
    worst = std::max(worst, norm(stationary_state(act(g, I), m, o).state - act(g, psi), Norm::Linf));
  }
  const GridSpec sf(5, 250);
  const Field a = stationary_state(generate(Stimulus::funnel(), sf), model(0.8, ResponseKind::rational()), o).state;
  double var = 0;
  for (int j = 0; j < sf.n(); ++j) {
    double mean = 0, sq = 0;
    for (int i = 0; i < sf.n(); ++i) mean += a.at(i, j);
    mean /= sf.n();
    for (int i = 0; i < sf.n(); ++i) sq += (a.at(i, j) - mean) * (a.at(i, j) - mean);
    var = std::max(var, sq / sf.n());
  }
  return {
      {"equivariance defect", worst, 10 * o.tol},
      {"funnel state x1-variance", var, 1e-10},
  };
}

std::vector<Check> figures_suite(const std::filesystem::path& dir) {
  const GridSpec s(10, 512);
  std::vector<Check> out;
  const std::pair<const char*, Stimulus> figs[] = {{"mackay_rays", Stimulus::mackay_rays(0.025, 2.0)},
                                                   {"mackay_target", Stimulus::mackay_target(0.025)}};
  for (const auto& [name, stim] : figs) {
    const Field I = generate(stim, s);
    const auto lin = binarize(stationary_state(I, model(1.0)).state);
    const auto rat = binarize(stationary_state(I, model(1.0, ResponseKind::rational())).state);
    const WarpOptions wo{1024, 0.0};
    write_pbm(dir / (std::string(name) + "_input_retina.pbm"), warp_to_retina(binarize(I), wo));
    write_pbm(dir / (std::string(name) + "_linear_retina.pbm"), warp_to_retina(lin, wo));
    write_pbm(dir / (std::string(name) + "_rational_retina.pbm"), warp_to_retina(rat, wo));
    const double frac = static_cast<double>(lin.count_differences(rat)) / static_cast<double>(s.size());
    out.push_back({std::string(name) + " linear vs rational binarized difference fraction", frac, 0.02});
  }
  return out;
}

const std::vector<std::pair<std::string, Suite>>& suites() {
  static const std::vector<std::pair<std::string, Suite>> s{
      {"kernels", kernels_suite},   {"analytic", analytic_suite}, {"dynamics", dynamics_suite},
      {"control", control_suite},   {"symmetry", symmetry_suite}, {"figures", figures_suite},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : suites()) n.push_back(name);
    return n;
  }();
  return names;
}

int verify_suite(const std::string& suite, const std::filesystem::path& out_dir) {
  Suite fn = nullptr;
  for (const auto& [name, f] : suites())
    if (name == suite) fn = f;
  if (!fn) {
    std::cerr << "nfield: unknown suite '" << suite << "'\n";
    return 2;
  }
  std::filesystem::create_directories(out_dir);
  const auto checks = fn(out_dir);
  std::ofstream os(out_dir / (suite + ".csv"));
  os << "check,value,threshold,pass\n";
  int failures = 0;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "\"%s\",%.6e,%.6e,%d\n", c.name.c_str(), c.value, c.threshold, c.pass());
    os << line;
    if (!c.pass()) {
      ++failures;
      std::cerr << "FAIL " << suite << ": " << c.name << " = " << c.value << " (threshold " << c.threshold << ")\n";
    }
  }
  std::cout << suite << ": " << checks.size() - failures << "/" << checks.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace nfield::app
