#include "gns/named_fields.hpp"

#include <cmath>

#include "gns/error.hpp"

namespace gns {

SpectralField taylor_green(const Grid& grid, double amplitude) {
  const int n = grid.dim();
  PhysicalField u(grid, n);
  const double k0 = grid.fundamental();
  const std::size_t size = grid.size();
  for (std::size_t i = 0; i < size; ++i) {
    const auto idx = grid.unflatten(i);
    const double x = k0 * idx[0] * grid.spacing();
    const double y = k0 * idx[1] * grid.spacing();
    const double z = n == 3 ? k0 * idx[2] * grid.spacing() : 0.0;
    const double cz = std::cos(z);
    u.values[i] = amplitude * std::sin(x) * std::cos(y) * cz;
    u.values[size + i] = -amplitude * std::cos(x) * std::sin(y) * cz;
  }
  return to_spectral(u);
}

SpectralField single_mode(const Grid& grid, const std::array<int, 3>& z, double amplitude) {
  const int n = grid.dim();
  if (z[0] == 0 && z[1] == 0 && z[2] == 0) throw ParameterError("single mode needs a nonzero wavevector");
  for (int d = 0; d < 3; ++d)
    if ((d >= n && z[d] != 0) || 2 * std::abs(z[d]) > grid.points())
      throw RangeError("wavevector is not on the lattice");
  std::array<double, 3> e{};
  if (n == 2) {
    e = {static_cast<double>(-z[1]), static_cast<double>(z[0]), 0.0};
  } else {
    // z x e_i for the axis with the smallest |z_i|, which is never parallel to z.
    int axis = 0;
    for (int d = 1; d < 3; ++d)
      if (std::abs(z[d]) < std::abs(z[axis])) axis = d;
    std::array<double, 3> unit{};
    unit[axis] = 1.0;
    e = {z[1] * unit[2] - z[2] * unit[1], z[2] * unit[0] - z[0] * unit[2],
         z[0] * unit[1] - z[1] * unit[0]};
  }
  double norm = 0.0;
  for (double c : e) norm += c * c;
  norm = std::sqrt(norm);
  SpectralField f(grid, n);
  const std::size_t kp = grid.flat_signed(z);
  const std::size_t km = grid.flat_signed({-z[0], -z[1], -z[2]});
  for (int c = 0; c < n; ++c) {
    f(c, kp) += 0.5 * amplitude * e[c] / norm;
    f(c, km) += 0.5 * amplitude * e[c] / norm;
  }
  return f;
}

}  // namespace gns
