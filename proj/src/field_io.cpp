#include "gns/field_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "gns/error.hpp"

namespace gns {
namespace {

constexpr std::array<char, 4> kMagic{'G', 'N', 'S', 'F'};

template <class T>
void put(std::ostream& out, T value) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  U bits;
  std::memcpy(&bits, &value, sizeof(T));
  char bytes[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
  out.write(bytes, sizeof(T));
}

template <class T>
T get(std::istream& in) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T)))
    throw IoError("field stream truncated");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) bits |= static_cast<U>(bytes[i]) << (8 * i);
  T value;
  std::memcpy(&value, &bits, sizeof(T));
  return value;
}

}  // namespace

void write_field(std::ostream& out, const SpectralField& f) {
  const Grid& g = f.grid();
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kFieldFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.points()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.components()));
  put<double>(out, g.length());
  for (const auto& c : f.coefficients()) {
    put<double>(out, c.real());
    put<double>(out, c.imag());
  }
  if (!out) throw IoError("failed writing field");
}

SpectralField read_field(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic)
    throw IoError("not a GNSF field (bad magic)");
  const auto version = get<std::uint32_t>(in);
  if (version != kFieldFormatVersion)
    throw IoError("unsupported field format version " + std::to_string(version));
  const auto n = get<std::uint32_t>(in);
  const auto points = get<std::uint32_t>(in);
  const auto components = get<std::uint32_t>(in);
  const auto length = get<double>(in);
  Grid grid = [&] {
    try {
      return Grid::make(static_cast<int>(n), static_cast<int>(points), length);
    } catch (const ParameterError& e) {
      throw IoError(std::string("invalid grid in field header: ") + e.what());
    }
  }();
  if (components < 1 || components > 3) throw IoError("invalid component count in field header");
  SpectralField f(grid, static_cast<int>(components));
  for (auto& c : f.coefficients()) {
    const double re = get<double>(in);
    const double im = get<double>(in);
    c = {re, im};
  }
  return f;
}

void save_field(const std::filesystem::path& path, const SpectralField& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_field(out, f);
}

SpectralField load_field(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_field(in);
}

}  // namespace gns
