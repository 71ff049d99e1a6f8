#include "app/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <cmath>
#include <sstream>

#include "nfield/error.hpp"

namespace nfield::app {

namespace pt = boost::property_tree;

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::Simulate, "simulate"},
    {ExperimentKind::Stationary, "stationary"},
    {ExperimentKind::KernelZeros, "kernel-zeros"},
    {ExperimentKind::HeavisideZeros, "heaviside-zeros"},
    {ExperimentKind::MacKayRays, "mackay-rays"},
    {ExperimentKind::MacKayTarget, "mackay-target"},
    {ExperimentKind::Control, "control"},
    {ExperimentKind::Equivariance, "equivariance"},
};

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::array<double, 3> parse_triple(const std::string& text) {
  std::array<double, 3> out{};
  std::istringstream is(text);
  std::string item;
  int k = 0;
  while (std::getline(is, item, ',')) {
    if (k == 3) break;
    out[k++] = std::stod(item);
  }
  if (k != 3 || std::getline(is, item, ',')) {
    throw InvalidArgument("stimulus.offsets: expected three comma-separated numbers, got '" + text + "'");
  }
  return out;
}

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& text) {
  for (const auto& k : kKinds)
    if (text == k.name) return k.kind;
  throw InvalidArgument("unknown experiment kind '" + text + "'");
}

std::string to_string(ExperimentKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k.name;
  return "?";
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "experiment.kind",  "experiment.name",  "kernel.kappa",     "kernel.sigma1",
      "kernel.sigma2",    "model.mu",         "model.response",   "grid.half_width",
      "grid.n",           "stimulus.kind",    "stimulus.lambda",  "stimulus.epsilon",
      "stimulus.theta",   "stimulus.offsets", "stimulus.seed",    "solver.tol",
      "solver.max_iter",  "solver.dt",        "solver.t_final",   "solver.scheme",
      "control.horizon",  "control.tau",      "control.tol",      "zeros.k_max",
      "output.retina_px", "output.r_max",
  };
  return keys;
}

Model ExperimentConfig::model() const { return Model{mu, ResponseKind::parse(response), params}; }

GridSpec ExperimentConfig::grid() const { return GridSpec(half_width, n); }

Scheme ExperimentConfig::integration_scheme() const {
  if (scheme == "exp-euler") return Scheme::ExponentialEuler;
  if (scheme == "etd2") return Scheme::ETD2;
  throw InvalidArgument("solver.scheme must be exp-euler or etd2, got '" + scheme + "'");
}

Stimulus ExperimentConfig::stimulus_spec() const {
  std::string name = stimulus;
  if (name.empty()) {
    name = kind == ExperimentKind::MacKayTarget ? "mackay_target"
           : kind == ExperimentKind::MacKayRays ? "mackay_rays"
                                                : "funnel";
  }
  Stimulus s;
  switch (parse_stimulus_kind(name)) {
    case StimulusKind::Funnel: s = Stimulus::funnel(lambda); break;
    case StimulusKind::Tunnel: s = Stimulus::tunnel(lambda); break;
    case StimulusKind::MacKayRays: s = Stimulus::mackay_rays(epsilon, theta, lambda); break;
    case StimulusKind::MacKayTarget:
      s = Stimulus::mackay_target(epsilon, lambda);
      s.offsets = offsets;
      break;
    case StimulusKind::Custom:
      throw InvalidArgument("stimulus.kind: custom stimuli are library-only");
  }
  return s;
}

pt::ptree ExperimentConfig::to_ptree() const {
  pt::ptree t;
  t.put("experiment.kind", to_string(kind));
  t.put("experiment.name", name);
  t.put("kernel.kappa", format_double(params.kappa));
  t.put("kernel.sigma1", format_double(params.sigma1));
  t.put("kernel.sigma2", format_double(params.sigma2));
  t.put("model.mu", format_double(mu));
  t.put("model.response", response);
  t.put("grid.half_width", format_double(half_width));
  t.put("grid.n", n);
  t.put("stimulus.kind", stimulus);
  t.put("stimulus.lambda", format_double(lambda));
  t.put("stimulus.epsilon", format_double(epsilon));
  t.put("stimulus.theta", format_double(theta));
  t.put("stimulus.offsets",
        format_double(offsets[0]) + "," + format_double(offsets[1]) + "," + format_double(offsets[2]));
  t.put("stimulus.seed", seed);
  t.put("solver.tol", format_double(tol));
  t.put("solver.max_iter", max_iter);
  t.put("solver.dt", format_double(dt));
  t.put("solver.t_final", format_double(t_final));
  t.put("solver.scheme", scheme);
  t.put("control.horizon", format_double(horizon));
  t.put("control.tau", format_double(tau));
  t.put("control.tol", format_double(control_tol));
  t.put("zeros.k_max", k_max);
  t.put("output.retina_px", retina_px);
  t.put("output.r_max", format_double(r_max));
  return t;
}

pt::ptree read_config_tree(const std::filesystem::path& path) {
  pt::ptree t;
  try {
    pt::read_ini(path.string(), t);
  } catch (const pt::ini_parser_error& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return t;
}

void apply_override(pt::ptree& tree, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InvalidArgument("--override expects KEY=VALUE, got '" + assignment + "'");
  }
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  const std::string key = trim(assignment.substr(0, eq));
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw InvalidArgument("unknown config key '" + key + "'");
  }
  tree.put(key, trim(assignment.substr(eq + 1)));
}

ExperimentConfig config_from_tree(const pt::ptree& tree) {
  // Reject typos before reading anything.
  const auto& keys = known_keys();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw InvalidArgument("config key '" + section + "' must live in a [section]");
    }
    for (const auto& [key, value] : body) {
      const std::string full = section + "." + key;
      if (std::find(keys.begin(), keys.end(), full) == keys.end()) {
        throw InvalidArgument("unknown config key '" + full + "'");
      }
    }
  }

  ExperimentConfig c;
  auto get = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    try {
      return tree.get<T>(key, fallback);
    } catch (const pt::ptree_bad_data&) {
      throw InvalidArgument(std::string("config key '") + key + "' has a malformed value '" +
                            tree.get<std::string>(key) + "'");
    }
  };
  c.kind = parse_experiment_kind(get("experiment.kind", to_string(c.kind)));
  c.name = get("experiment.name", c.name);
  c.params.kappa = get("kernel.kappa", c.params.kappa);
  c.params.sigma1 = get("kernel.sigma1", c.params.sigma1);
  c.params.sigma2 = get("kernel.sigma2", c.params.sigma2);
  c.mu = get("model.mu", c.mu);
  c.response = get("model.response", c.response);
  c.half_width = get("grid.half_width", c.half_width);
  c.n = get("grid.n", c.n);
  c.stimulus = get("stimulus.kind", c.stimulus);
  c.lambda = get("stimulus.lambda", c.lambda);
  c.epsilon = get("stimulus.epsilon", c.epsilon);
  c.theta = get("stimulus.theta", c.theta);
  if (auto o = tree.get_optional<std::string>("stimulus.offsets")) c.offsets = parse_triple(*o);
  c.seed = get("stimulus.seed", c.seed);
  c.tol = get("solver.tol", c.tol);
  c.max_iter = get("solver.max_iter", c.max_iter);
  c.dt = get("solver.dt", c.dt);
  c.t_final = get("solver.t_final", c.t_final);
  c.scheme = get("solver.scheme", c.scheme);
  c.horizon = get("control.horizon", c.horizon);
  c.tau = get("control.tau", c.tau);
  c.control_tol = get("control.tol", c.control_tol);
  c.k_max = get("zeros.k_max", c.k_max);
  c.retina_px = get("output.retina_px", c.retina_px);
  c.r_max = get("output.r_max", c.r_max);

  // Fail early on values the library would reject later anyway.
  c.params.validate();
  (void)c.model();
  (void)c.integration_scheme();
  (void)c.grid();
  if (c.kind != ExperimentKind::KernelZeros && c.kind != ExperimentKind::HeavisideZeros) {
    (void)c.stimulus_spec();
  }
  if (!(c.tol > 0) || c.max_iter < 1) throw InvalidArgument("solver.tol and solver.max_iter must be positive");
  if (c.k_max < 1) throw InvalidArgument("zeros.k_max must be >= 1");
  return c;
}

}  // namespace nfield::app
