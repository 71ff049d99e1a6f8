#include "app/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "app/artifacts.hpp"
#include "nfield/analytic1d.hpp"
#include "nfield/control.hpp"
#include "nfield/field_io.hpp"
#include "nfield/imaging.hpp"
#include "nfield/symmetry.hpp"

namespace nfield::app {

namespace {

std::string fmt_row(double t, double v) {
  char line[64];
  std::snprintf(line, sizeof line, "%.6f,%.12e\n", t, v);
  return line;
}

WarpOptions warp_options(const ExperimentConfig& c) { return {c.retina_px, c.r_max}; }

// Writes the four images shared by every field-producing experiment.
void write_field_set(Manifest& m, const ExperimentConfig& c, const std::string& stem, const Field& u,
                     const std::string& role) {
  write_field(m.path_for(stem + ".nfld"), u);
  m.add_artifact(stem + ".nfld", role + " field");
  write_pgm(m.path_for(stem + "_cortical.pgm"), field_image(u));
  m.add_artifact(stem + "_cortical.pgm", role + " cortical gray image");
  const BinaryPattern bp = binarize(u);
  write_pbm(m.path_for(stem + "_pattern.pbm"), bp);
  m.add_artifact(stem + "_pattern.pbm", role + " binarized cortical pattern");
  write_pbm(m.path_for(stem + "_retina.pbm"), warp_to_retina(bp, warp_options(c)));
  m.add_artifact(stem + "_retina.pbm", role + " retinal warp of the binarized pattern");
}

StationaryOptions stationary_options(const ExperimentConfig& c) {
  StationaryOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  return o;
}

void run_stationary(Manifest& m, const ExperimentConfig& c) {
  const GridSpec g = c.grid();
  const Field I = generate(c.stimulus_spec(), g);
  write_field_set(m, c, "input", I, "input");
  const auto r = stationary_state(I, c.model(), stationary_options(c));
  m.add_report("stationary", r.report);
  write_field_set(m, c, "state", r.state, "stationary");
  m.extra()["state_sup_norm"] = norm(r.state, Norm::Linf);
  if (c.kind == ExperimentKind::Stationary) return;
  // Afterimage: what the localized perturbation adds on top of the plain funnel/tunnel response.
  Stimulus plain = c.stimulus_spec();
  plain.epsilon = 0.0;
  const auto base = stationary_state(generate(plain, g), c.model(), stationary_options(c));
  m.add_report("unperturbed", base.report);
  const BinaryPattern diff = binarize(r.state - base.state);
  write_pbm(m.path_for("afterimage_retina.pbm"), warp_to_retina(diff, warp_options(c)));
  m.add_artifact("afterimage_retina.pbm", "retinal warp of sign(state - unperturbed state)");
}

void run_simulate(Manifest& m, const ExperimentConfig& c) {
  const GridSpec g = c.grid();
  const Field I = generate(c.stimulus_spec(), g);
  const Field a0 = random_smooth_field(g, c.seed, 1.0);
  write_field_set(m, c, "input", I, "input");
  IntegrateOptions o;
  o.dt = c.dt;
  o.scheme = c.integration_scheme();
  o.snapshot_interval = c.t_final / 10;
  o.stationary = stationary_options(c);
  const auto ev = integrate(a0, I, c.model(), c.t_final, o);
  write_field_set(m, c, "final", ev.final_state, "final");
  {
    std::ofstream os(m.path_for("snapshots.csv"));
    os << "t,sup_norm\n";
    for (const auto& [t, a] : ev.snapshots) os << fmt_row(t, norm(a, Norm::Linf));
  }
  m.add_artifact("snapshots.csv", "sup norm at each snapshot");
  if (!ev.decay_log.empty()) {
    std::ofstream os(m.path_for("decay_log.csv"));
    os << "t,distance_to_stationary\n";
    for (const auto& [t, d] : ev.decay_log) os << fmt_row(t, d);
    os.close();
    m.add_artifact("decay_log.csv", "sup distance to the stationary state");
    m.extra()["final_distance"] = ev.decay_log.back().second;
  }
  m.extra()["final_sup_norm"] = norm(ev.final_state, Norm::Linf);
}

void run_zeros(Manifest& m, const ExperimentConfig& c, analytic::SeriesKind kind) {
  const auto table = analytic::locate_zeros(kind, c.k_max);
  analytic::write_zero_table_csv(m.path_for("zeros.csv"), table);
  m.add_artifact("zeros.csv", "certified zero table");
  m.extra()["rows"] = table.rows.size();
  m.extra()["all_pass"] = table.all_pass();
  if (!table.all_pass()) throw StructuralError("zero table has failing rows; see zeros.csv");
}

void run_control(Manifest& m, const ExperimentConfig& c) {
  const GridSpec g = c.grid();
  const Model model = c.model();
  const Field a0 = random_smooth_field(g, c.seed, 1.0);
  const auto target = stationary_state(generate(c.stimulus_spec(), g), model, stationary_options(c));
  m.add_report("target_stationary", target.report);
  write_field(m.path_for("a0.nfld"), a0);
  m.add_artifact("a0.nfld", "initial state");
  write_field_set(m, c, "target", target.state, "target");

  ShootingOptions so;
  so.tol = c.control_tol;
  const ControlProblem p{a0, target.state, c.horizon, model};
  const bool linear = model.kind.variant() == ResponseVariant::Linear;
  ControlResult r;
  if (linear && c.horizon <= c.tau) {
    r = linear_control(p, c.control_tol);
  } else if (c.horizon <= c.tau) {
    r = small_time_control(p, so);
  } else {
    r = two_phase_control(p, c.tau, so);
  }
  write_schedule_csv(m.path_for("schedule.csv"), r);
  m.add_artifact("schedule.csv", "piecewise-constant control schedule");
  for (std::size_t k = 0; k < r.schedule.size(); ++k) {
    const std::string f = "schedule_" + std::to_string(k) + ".nfld";
    m.add_artifact(f, "control segment " + std::to_string(k));
  }
  m.extra()["endpoint_error"] = r.endpoint_error;
  m.extra()["iterations"] = r.iterations;
  m.extra()["tau_max"] = tau_max(model.mu, constants(model.params).mu_0);
  if (!r.success) throw NonConvergence("control endpoint error above control.tol", {r.iterations, r.endpoint_error, 0});
}

void run_equivariance(Manifest& m, const ExperimentConfig& c) {
  const GridSpec g = c.grid();
  const Model model = c.model();
  const auto opts = stationary_options(c);
  const Field I = random_smooth_field(g, c.seed, 1.5, 1.5);
  const auto base = stationary_state(I, model, opts);
  m.add_report("base", base.report);
  struct Named {
    const char* name;
    GroupElement g;
  };
  const Named elems[] = {{"translate(7,-3)", GroupElement::translation(7, -3)},
                         {"rotate90", GroupElement::rotation90(1)},
                         {"reflect_x1", GroupElement::reflect_x1()},
                         {"reflect_x2", GroupElement::reflect_x2()},
                         {"rotate270*translate(5,11)",
                          GroupElement::rotation90(3) * GroupElement::translation(5, 11)}};
  std::ofstream os(m.path_for("equivariance.csv"));
  os << "element,error,threshold,pass\n";
  double worst = 0;
  for (const auto& e : elems) {
    const Field lhs = stationary_state(act(e.g, I), model, opts).state;
    const double err = norm(lhs - act(e.g, base.state), Norm::Linf);
    worst = std::max(worst, err);
    char line[160];
    std::snprintf(line, sizeof line, "%s,%.6e,%.6e,%d\n", e.name, err, 10 * c.tol, err <= 10 * c.tol);
    os << line;
  }
  os.close();
  m.add_artifact("equivariance.csv", "equivariance defects per group element");
  m.extra()["max_error"] = worst;
  if (worst > 10 * c.tol) throw StructuralError("equivariance defect above 10x solver tolerance");
}

}  // namespace

nlohmann::json config_json(const ExperimentConfig& config) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [section, body] : config.to_ptree()) {
    for (const auto& [key, value] : body) j[section][key] = value.data();
  }
  return j;
}

int run_experiment(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  Manifest m(out_dir);
  m.set("tool", "nfield");
  m.set("config", config_json(c));
  m.set("fft_threads", fft_threads());
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
  try {
    switch (c.kind) {
      case ExperimentKind::Stationary:
      case ExperimentKind::MacKayRays:
      case ExperimentKind::MacKayTarget: run_stationary(m, c); break;
      case ExperimentKind::Simulate: run_simulate(m, c); break;
      case ExperimentKind::KernelZeros: run_zeros(m, c, analytic::SeriesKind::K); break;
      case ExperimentKind::HeavisideZeros: run_zeros(m, c, analytic::SeriesKind::BHeaviside); break;
      case ExperimentKind::Control: run_control(m, c); break;
      case ExperimentKind::Equivariance: run_equivariance(m, c); break;
    }
  } catch (const NonConvergence& e) {
    m.add_report("failed_solve", e.report());
    m.set("wall_clock_s", elapsed());
    m.write("failed", e.what());
    std::cerr << "nfield: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    m.set("wall_clock_s", elapsed());
    m.write("failed", e.what());
    std::cerr << "nfield: " << e.what() << '\n';
    return 1;
  }
  m.set("wall_clock_s", elapsed());
  m.write("ok");
  return 0;
}

}  // namespace nfield::app
