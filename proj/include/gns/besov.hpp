#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "gns/spectral.hpp"

namespace gns {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Regularity s, integrability p and summation r of a homogeneous Besov norm.
/// p and r may be +infinity.
struct BesovIndex {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;

  static BesovIndex make(double s, double p, double r);
};

/// Littlewood-Paley cutoff phi(r) = chi(r/2) - chi(r) built from a smooth radial
/// low-pass chi equal to 1 on [0, 3/4] and 0 on [4/3, inf). The sum over all q of
/// phi(2^-q r) telescopes to 1 for every r > 0 and phi vanishes outside (3/4, 8/3).
///
/// Resolved blocks run from q_min, the lowest block that meets the lattice
/// (2^q * 8/3 > k0), to q_max, the highest block whose annulus lies inside the
/// Nyquist ball (2^q * 8/3 <= k0 N / 2). Blocks below q_min are identically zero on
/// the lattice, so the only truncation is at high frequency.
class DyadicCutoff {
 public:
  static constexpr double kInner = 3.0 / 4.0;
  static constexpr double kOuter = 8.0 / 3.0;

  /// Throws ConfigurationError when fewer than 3 blocks are resolved.
  static DyadicCutoff build(const Grid& grid);

  static double low_pass(double r);
  static double profile(double r);

  double weight(int q, double magnitude) const;
  int q_min() const { return q_min_; }
  int q_max() const { return q_max_; }
  int block_count() const { return q_max_ - q_min_ + 1; }
  const Grid& grid() const { return grid_; }

  /// Wavenumbers in [k0, resolved_upper()] are covered exactly by the resolved blocks.
  double resolved_upper() const;

 private:
  DyadicCutoff(const Grid& grid, int q_min, int q_max)
      : grid_(grid), q_min_(q_min), q_max_(q_max) {}

  Grid grid_;
  int q_min_;
  int q_max_;
};

/// Delta_q f. Throws RangeError when q is outside [q_min, q_max].
SpectralField dyadic_block(const SpectralField& f, int q, const DyadicCutoff& cutoff);

/// Point values of every resolved block of one field; caches block L^p norms so
/// several Besov norms of the same field share the transforms.
class BlockDecomposition {
 public:
  BlockDecomposition(const SpectralField& f, const DyadicCutoff& cutoff);

  int q_min() const { return q_min_; }
  int q_max() const { return q_max_; }
  double block_lp(int q, double p) const;
  std::vector<double> block_lp_norms(double p) const;
  double besov(const BesovIndex& idx) const;
  const PhysicalField& block(int q) const { return blocks_.at(q - q_min_); }
  bool block_empty(int q) const { return empty_.at(q - q_min_); }

 private:
  int q_min_;
  int q_max_;
  std::vector<PhysicalField> blocks_;
  std::vector<bool> empty_;
  mutable std::map<double, std::vector<double>> cache_;
};

/// Besov norm of sum_i coeffs[i] * f_i from the block decompositions of the f_i,
/// without further transforms. All parts must share the grid and cutoff.
double combination_besov(std::span<const BlockDecomposition* const> parts,
                         std::span<const double> coeffs, const BesovIndex& idx);

/// l^r combination of 2^{qs} * block_lp[q - q_min].
double combine_blocks(std::span<const double> block_lp, int q_min, double s, double r);

double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicCutoff& cutoff);

struct DifferenceNormOptions {
  double s = 0.5;
  double p = 2.0;
  double r = 2.0;
  int order = 1;  // k, the order of the finite difference
  int shift_samples = 256;
  std::uint64_t seed = 1;
};

/// Monte Carlo estimate of the finite-difference Besov characterisation
/// (int |y|^{-sr-n} ||Delta_y^k f||_p^r dy)^{1/r}, shifts drawn log-uniformly in
/// radius over [L/N, L/2] with uniform direction. r = inf takes the sup over samples.
double difference_norm(const SpectralField& f, const DifferenceNormOptions& opts);

}  // namespace gns
