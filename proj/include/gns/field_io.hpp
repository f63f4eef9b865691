#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "gns/spectral.hpp"

namespace gns {

inline constexpr std::uint32_t kFieldFormatVersion = 1;

/// Binary layout, all little-endian:
///   "GNSF" | u32 version | u32 n | u32 N | u32 components | f64 L |
///   components * N^n coefficients as (re, im) f64 pairs, component-major,
///   row-major lattice order within a component.
void write_field(std::ostream& out, const SpectralField& f);
SpectralField read_field(std::istream& in);

void save_field(const std::filesystem::path& path, const SpectralField& f);
SpectralField load_field(const std::filesystem::path& path);

}  // namespace gns
