#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "app/config.hpp"

namespace nfield::app {

/// Runs one experiment, writing artifacts and manifest.json into out_dir.
/// Returns the process exit code; failures still leave a manifest behind.
int run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

nlohmann::json config_json(const ExperimentConfig& config);

}  // namespace nfield::app
