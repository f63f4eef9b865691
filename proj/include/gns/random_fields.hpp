#pragma once

#include <cstdint>
#include <random>

#include "gns/lorentz.hpp"
#include "gns/spectral.hpp"

namespace gns {

/// Band-limited random field: Gaussian coefficients with envelope |k|^{-sigma} on
/// 0 < |k| <= band, Hermitian-symmetric (real in physical space), zero mean and zero
/// Nyquist content.
struct FieldSpec {
  int components = 1;
  double sigma = 1.0;
  double band = 3.0;
  bool solenoidal = false;
  /// Rescales to this L^2 norm when positive.
  double l2_norm = 0.0;
};

using Rng = std::mt19937_64;

/// Independent stream for (seed, stream, index).
Rng make_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

SpectralField random_field(const Grid& grid, const FieldSpec& spec, Rng& rng);

/// Positive log-normal step amplitudes on the given nodes.
TimeSamples random_steps(const std::vector<double>& nodes, Rng& rng, double spread = 1.0);

}  // namespace gns
