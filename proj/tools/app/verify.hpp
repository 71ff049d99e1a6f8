#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nfield::app {

const std::vector<std::string>& suite_names();

/// Runs one suite, writes <suite>.csv (and any tables) into out_dir.
/// Returns 0 when every check passes.
int verify_suite(const std::string& suite, const std::filesystem::path& out_dir);

}  // namespace nfield::app
