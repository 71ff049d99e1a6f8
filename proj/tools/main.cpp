#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

#include "app/config.hpp"
#include "app/experiments.hpp"
#include "app/verify.hpp"
#include "nfield/control.hpp"
#include "nfield/error.hpp"
#include "nfield/kernels.hpp"

namespace {

nfield::app::ExperimentConfig load(const std::string& path, const std::vector<std::string>& overrides) {
  boost::property_tree::ptree tree;
  if (!path.empty()) tree = nfield::app::read_config_tree(path);
  for (const auto& o : overrides) nfield::app::apply_override(tree, o);
  return nfield::app::config_from_tree(tree);
}

int info(const nfield::app::ExperimentConfig& c) {
  const auto k = nfield::constants(c.params);
  const auto g = c.grid();
  std::printf("experiment   %s\n", nfield::app::to_string(c.kind).c_str());
  std::printf("kernel       kappa=%.6g sigma1=%.6g sigma2=%.6g\n", c.params.kappa, c.params.sigma1, c.params.sigma2);
  std::printf("mu_0         %.12g\n", k.mu_0);
  std::printf("mu_c         %.12g\n", k.mu_c);
  std::printf("q_c          %.12g\n", k.q_c);
  std::printf("theta        %.12g\n", k.theta);
  std::printf("l1_norm      %.12g\n", k.l1_norm);
  std::printf("mu           %.6g (%s)\n", c.mu, c.mu < k.mu_0 ? "contraction regime" : "outside contraction regime");
  if (c.mu < k.mu_0) std::printf("tau_max      %.12g\n", nfield::tau_max(c.mu, k.mu_0));
  std::printf("response     %s\n", nfield::ResponseKind::parse(c.response).name().c_str());
  std::printf("grid         L=%.6g n=%d dx=%.6g\n", g.half_width(), g.n(), g.dx());
  std::printf("fft threads  %d\n", nfield::fft_threads());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nfield: neural field simulations, kernel analysis and control synthesis"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 1;
  std::string config_path, out_dir = "out";
  std::vector<std::string> overrides;
  app.add_option("--threads", threads, "FFT threads")->check(CLI::PositiveNumber);

  auto add_config_opts = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "INI experiment config")->check(CLI::ExistingFile);
    sub->add_option("--override", overrides, "section.key=value, repeatable");
  };

  auto* run = app.add_subcommand("run", "run one experiment and write its artifacts");
  add_config_opts(run);
  run->add_option("--out", out_dir, "output directory");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite (or 'all')");
  verify->add_option("suite", suite, "kernels|analytic|dynamics|control|symmetry|figures|all")->required();
  verify->add_option("--out", out_dir, "output directory");

  auto* inf = app.add_subcommand("info", "print derived constants for a config");
  add_config_opts(inf);

  CLI11_PARSE(app, argc, argv);

  try {
    nfield::set_fft_threads(threads);
    if (*run) return nfield::app::run_experiment(load(config_path, overrides), out_dir);
    if (*inf) return info(load(config_path, overrides));
    if (*verify) {
      if (suite != "all") return nfield::app::verify_suite(suite, out_dir);
      int worst = 0;
      for (const auto& s : nfield::app::suite_names()) worst = std::max(worst, nfield::app::verify_suite(s, out_dir));
      return worst;
    }
  } catch (const nfield::Error& e) {
    std::cerr << "nfield: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
