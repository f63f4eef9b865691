#pragma once

#include <complex>
#include <span>

#include "gns/grid.hpp"

namespace gns::detail {

// Forward transform normalized so that f(x) = sum_k c_k exp(i k.x).
void fft_forward(const Grid& grid, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

// Unnormalized synthesis: values at grid points from coefficients.
void fft_inverse(const Grid& grid, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

}  // namespace gns::detail
