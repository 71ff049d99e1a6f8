#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <string>

#include "nfield/dynamics.hpp"

namespace nfield::app {

std::string sha256_hex(const std::filesystem::path& file);

// Collects everything written during one run and emits manifest.json.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path out_dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path path_for(const std::string& file) const { return dir_ / file; }

  /// Registers a file that already exists under dir().
  void add_artifact(const std::string& file, const std::string& role);
  void add_report(const std::string& label, const SolverReport& r);
  nlohmann::json& extra() { return doc_["results"]; }
  void set(const std::string& key, nlohmann::json value) { doc_[key] = std::move(value); }

  void write(const std::string& status, const std::string& error = {});

 private:
  std::filesystem::path dir_;
  nlohmann::json doc_;
};

}  // namespace nfield::app
