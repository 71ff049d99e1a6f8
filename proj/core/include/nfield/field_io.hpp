#pragma once

// Flat binary field files: a 32-byte header followed by n^d little-endian
// doubles. Header layout: "NFLD", u32 version, u32 d, u32 n, f64 L, 8 bytes
// reserved (zero).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "nfield/grid.hpp"

namespace nfield {

inline constexpr std::uint32_t kFieldFormatVersion = 1;

std::vector<unsigned char> encode_field(const Field& u);
Field decode_field(const std::vector<unsigned char>& bytes);

void write_field(const std::filesystem::path& path, const Field& u);
Field read_field(const std::filesystem::path& path);

}  // namespace nfield
