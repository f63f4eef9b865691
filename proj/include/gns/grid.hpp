#pragma once

#include <array>
#include <cstddef>

namespace gns {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// One lattice point of the periodic box in wavenumber space.
struct Mode {
  std::array<int, 3> index{};          // signed integers z, Nyquist stored as -N/2
  std::array<double, 3> wavevector{};  // k0 * z
  std::array<double, 3> derivative{};  // wavevector with Nyquist components zeroed
  double magnitude_sq = 0.0;           // |k0 z|^2
  bool has_nyquist = false;
};

/// Uniform periodic box [0, L)^n sampled with N points per axis.
/// Flat indices are row-major with axis 0 slowest; wavenumbers use FFT ordering.
class Grid {
 public:
  /// Validates n in {2,3}, N >= 8 a power of two, L > 0.
  static Grid make(int dim, int points, double length = kTwoPi);

  int dim() const { return dim_; }
  int points() const { return points_; }
  double length() const { return length_; }
  double fundamental() const { return kTwoPi / length_; }
  double spacing() const { return length_ / points_; }
  double cell_volume() const;
  double box_volume() const;
  std::size_t size() const { return size_; }

  int signed_index(int i) const { return i < points_ / 2 ? i : i - points_; }
  int unsigned_index(int z) const { return z < 0 ? z + points_ : z; }
  bool is_nyquist(int z) const { return 2 * z == -points_ || 2 * z == points_; }

  std::size_t flat(const std::array<int, 3>& idx) const;
  /// Flat index of signed lattice point z (each |z_i| <= N/2).
  std::size_t flat_signed(const std::array<int, 3>& z) const;
  std::array<int, 3> unflatten(std::size_t flat) const;
  Mode mode(std::size_t flat) const;

  /// Same box sampled with factor*N points. The refined size need not be a power of two.
  Grid refined(int factor) const;

  template <class Fn>
  void for_each_mode(Fn&& fn) const {
    for (std::size_t k = 0; k < size_; ++k) fn(k, mode(k));
  }

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && points_ == other.points_ && length_ == other.length_;
  }

 private:
  Grid(int dim, int points, double length);

  int dim_;
  int points_;
  double length_;
  std::size_t size_;
};

}  // namespace gns
