#include "app/artifacts.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "nfield/error.hpp"

namespace nfield::app {

std::string sha256_hex(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open " + file.string() + " for hashing");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("sha256: digest init failed");
  }
  std::array<char, 1 << 16> buf;
  while (is) {
    is.read(buf.data(), buf.size());
    if (is.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(is.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[md[k] >> 4];
    out += hex[md[k] & 15];
  }
  return out;
}

Manifest::Manifest(std::filesystem::path out_dir) : dir_(std::move(out_dir)) {
  std::filesystem::create_directories(dir_);
  doc_["artifacts"] = nlohmann::json::array();
  doc_["solver_reports"] = nlohmann::json::object();
  doc_["results"] = nlohmann::json::object();
}

void Manifest::add_artifact(const std::string& file, const std::string& role) {
  const auto p = dir_ / file;
  doc_["artifacts"].push_back({{"file", file},
                               {"role", role},
                               {"bytes", std::filesystem::file_size(p)},
                               {"sha256", sha256_hex(p)}});
}

void Manifest::add_report(const std::string& label, const SolverReport& r) {
  doc_["solver_reports"][label] = {{"iterations", r.iterations},
                                   {"residual", r.residual},
                                   {"contraction_ratio_estimate", r.contraction_ratio_estimate}};
}

void Manifest::write(const std::string& status, const std::string& error) {
  doc_["status"] = status;
  if (!error.empty()) doc_["error"] = error;
  std::ofstream os(dir_ / "manifest.json");
  os << doc_.dump(2) << '\n';
  if (!os) throw Error("could not write " + (dir_ / "manifest.json").string());
}

}  // namespace nfield::app
