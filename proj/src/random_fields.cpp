#include "gns/random_fields.hpp"

#include <cmath>

#include "gns/error.hpp"

namespace gns {

Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

SpectralField random_field(const Grid& grid, const FieldSpec& spec, Rng& rng) {
  if (spec.components < 1) throw ParameterError("field needs at least one component");
  if (spec.solenoidal && spec.components != grid.dim())
    throw ParameterError("solenoidal fields need one component per axis");
  if (!(spec.band > 0.0)) throw ParameterError("band limit must be positive");
  std::normal_distribution<double> gauss(0.0, 1.0);
  SpectralField f(grid, spec.components);
  const double band_sq = spec.band * spec.band;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const Mode m = grid.mode(k);
    const bool active = !m.has_nyquist && m.magnitude_sq <= band_sq;
    const double env = active ? std::pow(m.magnitude_sq, -0.5 * spec.sigma) : 0.0;
    for (int c = 0; c < spec.components; ++c) {
      // Draw for every mode so the stream does not depend on the band.
      const double re = gauss(rng), im = gauss(rng);
      if (active) f(c, k) = env * Complex(re, im);
    }
  }
  // Hermitian symmetrisation: c_{-k} = conj(c_k).
  SpectralField sym(grid, spec.components);
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const Mode m = grid.mode(k);
    if (m.has_nyquist) continue;
    std::array<int, 3> neg{-m.index[0], -m.index[1], -m.index[2]};
    const std::size_t kn = grid.flat_signed(neg);
    for (int c = 0; c < spec.components; ++c)
      sym(c, k) = 0.5 * (f(c, k) + std::conj(f(c, kn)));
  }
  if (spec.solenoidal) sym = leray_project(sym);
  if (spec.l2_norm > 0.0) {
    const double norm = l2_norm(sym);
    if (norm > 0.0) sym *= spec.l2_norm / norm;
  }
  return sym;
}

TimeSamples random_steps(const std::vector<double>& nodes, Rng& rng, double spread) {
  std::normal_distribution<double> gauss(0.0, spread);
  std::vector<double> values(nodes.size());
  for (double& v : values) v = std::exp(gauss(rng));
  return TimeSamples::make(nodes, std::move(values));
}

}  // namespace gns
