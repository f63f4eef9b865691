#include "gns/grid.hpp"

#include <cmath>
#include <string>

#include "gns/error.hpp"

namespace gns {

Grid::Grid(int dim, int points, double length)
    : dim_(dim), points_(points), length_(length), size_(1) {
  for (int d = 0; d < dim_; ++d) size_ *= static_cast<std::size_t>(points_);
}

Grid Grid::make(int dim, int points, double length) {
  if (dim != 2 && dim != 3)
    throw ParameterError("grid dimension must be 2 or 3, got " + std::to_string(dim));
  if (points < 8 || (points & (points - 1)) != 0)
    throw ParameterError("points per axis must be a power of two >= 8, got " +
                         std::to_string(points));
  if (!(length > 0.0) || !std::isfinite(length))
    throw ParameterError("box length must be positive and finite");
  return Grid(dim, points, length);
}

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

double Grid::box_volume() const { return std::pow(length_, dim_); }

std::size_t Grid::flat(const std::array<int, 3>& idx) const {
  std::size_t k = 0;
  for (int d = 0; d < dim_; ++d) k = k * points_ + static_cast<std::size_t>(idx[d]);
  return k;
}

std::size_t Grid::flat_signed(const std::array<int, 3>& z) const {
  std::array<int, 3> idx{};
  for (int d = 0; d < dim_; ++d) idx[d] = unsigned_index(z[d] == points_ / 2 ? -z[d] : z[d]);
  return flat(idx);
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
  std::array<int, 3> idx{};
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % points_);
    flat /= points_;
  }
  return idx;
}

Mode Grid::mode(std::size_t flat) const {
  Mode m;
  const auto idx = unflatten(flat);
  const double k0 = fundamental();
  for (int d = 0; d < dim_; ++d) {
    const int z = signed_index(idx[d]);
    m.index[d] = z;
    m.wavevector[d] = k0 * z;
    const bool nyq = is_nyquist(z);
    m.has_nyquist = m.has_nyquist || nyq;
    m.derivative[d] = nyq ? 0.0 : m.wavevector[d];
    m.magnitude_sq += m.wavevector[d] * m.wavevector[d];
  }
  return m;
}

Grid Grid::refined(int factor) const {
  if (factor < 1) throw ParameterError("refinement factor must be >= 1");
  return Grid(dim_, points_ * factor, length_);
}

}  // namespace gns
