#pragma once

#include <array>
#include <boost/property_tree/ptree.hpp>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nfield/dynamics.hpp"
#include "nfield/stimuli.hpp"

namespace nfield::app {

enum class ExperimentKind {
  Simulate,
  Stationary,
  KernelZeros,
  HeavisideZeros,
  MacKayRays,
  MacKayTarget,
  Control,
  Equivariance,
};

ExperimentKind parse_experiment_kind(const std::string& text);
std::string to_string(ExperimentKind kind);

// Defaults give the production MacKay setup: L = 10, n = 2000, canonical kernel, mu = 1.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::MacKayRays;
  std::string name = "run";

  DoGParams params = DoGParams::canonical();
  double mu = 1.0;
  std::string response = "linear";

  double half_width = 10.0;
  int n = 2000;

  std::string stimulus = "";  // empty: implied by the experiment kind
  double lambda = 2.5;
  double epsilon = 0.025;
  double theta = 2.0;
  std::array<double, 3> offsets{9.75, 9.75, 0.25};
  std::uint64_t seed = 1;

  double tol = 1e-10;
  int max_iter = 500;
  double dt = 0.01;
  double t_final = 20.0;
  std::string scheme = "exp-euler";

  double horizon = 2.0;
  double tau = 0.1;
  double control_tol = 1e-4;

  int k_max = 20;

  int retina_px = 1024;
  double r_max = 0.0;  // 0: e^L

  Model model() const;
  GridSpec grid() const;
  Stimulus stimulus_spec() const;
  Scheme integration_scheme() const;
  boost::property_tree::ptree to_ptree() const;
};

/// Reads an INI file ("[section]" headers, "key = value" lines).
boost::property_tree::ptree read_config_tree(const std::filesystem::path& path);

/// Applies "section.key=value". Unknown keys throw.
void apply_override(boost::property_tree::ptree& tree, const std::string& assignment);

ExperimentConfig config_from_tree(const boost::property_tree::ptree& tree);

const std::vector<std::string>& known_keys();

}  // namespace nfield::app
