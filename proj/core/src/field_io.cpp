#include "nfield/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace nfield {

namespace {

template <class T>
void put_le(std::vector<unsigned char>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  auto bits = std::bit_cast<U>(value);
  for (std::size_t b = 0; b < sizeof(U); ++b) {
    out.push_back(static_cast<unsigned char>(bits >> (8 * b)));
  }
}

template <class T>
T get_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>;
  U bits = 0;
  for (std::size_t b = 0; b < sizeof(U); ++b) bits |= static_cast<U>(p[b]) << (8 * b);
  return std::bit_cast<T>(bits);
}

constexpr std::size_t kHeaderSize = 32;

}  // namespace

std::vector<unsigned char> encode_field(const Field& u) {
  const GridSpec& s = u.spec();
  std::vector<unsigned char> out;
  out.reserve(kHeaderSize + 8 * u.size());
  for (char c : {'N', 'F', 'L', 'D'}) out.push_back(static_cast<unsigned char>(c));
  put_le<std::uint32_t>(out, kFieldFormatVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.dim()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.n()));
  put_le<double>(out, s.half_width());
  out.resize(kHeaderSize, 0);
  for (double v : u.values()) put_le<double>(out, v);
  return out;
}

Field decode_field(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), "NFLD", 4) != 0) {
    throw InvalidArgument("decode_field: missing NFLD header");
  }
  const auto version = get_le<std::uint32_t>(bytes.data() + 4);
  if (version != kFieldFormatVersion) {
    throw InvalidArgument("decode_field: unsupported format version " +
                          std::to_string(version));
  }
  const auto dim = get_le<std::uint32_t>(bytes.data() + 8);
  const auto n = get_le<std::uint32_t>(bytes.data() + 12);
  const auto L = get_le<double>(bytes.data() + 16);
  GridSpec spec(L, static_cast<int>(n), static_cast<int>(dim));
  if (bytes.size() != kHeaderSize + 8 * spec.size()) {
    throw DimensionError("decode_field: payload size does not match header");
  }
  std::vector<double> values(spec.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = get_le<double>(bytes.data() + kHeaderSize + 8 * k);
  }
  return Field(spec, std::move(values));
}

void write_field(const std::filesystem::path& path, const Field& u) {
  const auto bytes = encode_field(u);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("write_field: cannot open " + path.string());
  os.write(reinterpret_cast<const char*>(bytes.data()),
           static_cast<std::streamsize>(bytes.size()));
  if (!os) throw Error("write_field: write failed for " + path.string());
}

Field read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("read_field: cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(is)),
                                   std::istreambuf_iterator<char>());
  return decode_field(bytes);
}

}  // namespace nfield
