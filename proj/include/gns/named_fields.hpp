#pragma once

#include <array>

#include "gns/spectral.hpp"

namespace gns {

/// Taylor-Green vortex (sin x cos y, -cos x sin y), extended by cos z and a zero third
/// component in 3D. Divergence-free; on the 2 pi box it is an eigenfield of -Delta with
/// eigenvalue 2 in 2D and 3 in 3D.
SpectralField taylor_green(const Grid& grid, double amplitude = 1.0);

/// Real solenoidal single-mode field A cos(k . x) e with k = k0 z and e a unit vector
/// orthogonal to k; vector field with one component per axis.
SpectralField single_mode(const Grid& grid, const std::array<int, 3>& z, double amplitude = 1.0);

}  // namespace gns
