#include <gtest/gtest.h>

#include <cmath>

#include "gns/besov.hpp"
#include "gns/error.hpp"
#include "gns/scaling.hpp"
#include "test_util.hpp"

namespace gns {
namespace {

TEST(DyadicCutoff, PartitionOfUnity) {
  for (double r = 0.05; r < 40.0; r *= 1.037) {
    double sum = 0.0;
    for (int q = -12; q <= 12; ++q) sum += DyadicCutoff::profile(std::ldexp(r, -q));
    EXPECT_NEAR(sum, 1.0, 1e-12) << "r = " << r;
  }
}

TEST(DyadicCutoff, SupportAndRange) {
  EXPECT_EQ(DyadicCutoff::profile(0.5), 0.0);
  EXPECT_EQ(DyadicCutoff::profile(0.75), 0.0);
  EXPECT_EQ(DyadicCutoff::profile(8.0 / 3.0), 0.0);
  EXPECT_EQ(DyadicCutoff::profile(3.0), 0.0);
  EXPECT_EQ(DyadicCutoff::low_pass(0.7), 1.0);
  EXPECT_EQ(DyadicCutoff::low_pass(1.4), 0.0);
  for (double r = 0.0; r < 4.0; r += 0.01) {
    const double v = DyadicCutoff::profile(r);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(DyadicCutoff, ResolvedRangeOnStandardGrids) {
  const DyadicCutoff c16 = DyadicCutoff::build(Grid::make(2, 16));
  EXPECT_EQ(c16.q_min(), -1);
  EXPECT_EQ(c16.q_max(), 1);
  EXPECT_DOUBLE_EQ(c16.resolved_upper(), 3.0);
  const DyadicCutoff c32 = DyadicCutoff::build(Grid::make(2, 32));
  EXPECT_EQ(c32.q_max(), 2);
  EXPECT_DOUBLE_EQ(c32.resolved_upper(), 6.0);
  EXPECT_EQ(DyadicCutoff::build(Grid::make(2, 64)).q_max(), 3);
  EXPECT_THROW(DyadicCutoff::build(Grid::make(2, 8)), ConfigurationError);
}

TEST(DyadicBlock, SingleModeAtTwo) {
  const Grid g = Grid::make(2, 32);
  const DyadicCutoff cut = DyadicCutoff::build(g);
  const SpectralField f = test::cosine_mode(g, 1, 0, {2, 0, 0});
  const std::size_t k = g.flat_signed({2, 0, 0});
  for (int q = cut.q_min(); q <= cut.q_max(); ++q) {
    const SpectralField b = dyadic_block(f, q, cut);
    const double expect = 0.5 * DyadicCutoff::profile(std::ldexp(2.0, -q));
    EXPECT_NEAR(b(0, k).real(), expect, 1e-15);
    const double r = std::ldexp(2.0, -q);
    if (!(r > 0.75 && r < 8.0 / 3.0)) {
      EXPECT_EQ(max_coefficient(b), 0.0) << q;
    }
  }
  EXPECT_EQ(max_coefficient(dyadic_block(SpectralField(g, 2), 0, cut)), 0.0);
  EXPECT_THROW(dyadic_block(f, cut.q_max() + 1, cut), RangeError);
}

TEST(DyadicBlock, ReconstructionOfBandLimitedFields) {
  const Grid g = Grid::make(2, 32);
  const DyadicCutoff cut = DyadicCutoff::build(g);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SpectralField f = test::random_band_limited(g, 2, seed, false, 5.5);
    SpectralField sum(g, 2);
    for (int q = cut.q_min(); q <= cut.q_max(); ++q) sum += dyadic_block(f, q, cut);
    EXPECT_LT(test::max_abs_diff(sum, f), 1e-12);
  }
}

/// Closed form for A cos(2 x1): every block is phi_q A cos(2 x1).
TEST(BesovNorm, SingleModeClosedForm) {
  const Grid g = Grid::make(2, 32);
  const DyadicCutoff cut = DyadicCutoff::build(g);
  const double amp = 1.7;
  const SpectralField f = test::cosine_mode(g, 1, 0, {2, 0, 0}, amp);
  // ||cos||_{L^2(T^2)} = 2 pi / sqrt 2, ||cos||_{L^4(T^2)} = (4 pi^2 * 3/8)^{1/4}
  const double lp2 = kTwoPi / std::sqrt(2.0);
  const double lp4 = std::pow(kTwoPi * kTwoPi * 3.0 / 8.0, 0.25);
  for (double s : {-0.5, 0.0, 1.0}) {
    for (double r : {1.0, 2.0, kInf}) {
      double acc = 0.0;
      for (int q = cut.q_min(); q <= cut.q_max(); ++q) {
        const double w = std::pow(2.0, q * s) * DyadicCutoff::profile(std::ldexp(2.0, -q));
        acc = std::isinf(r) ? std::max(acc, w) : acc + std::pow(w, r);
      }
      const double sum = std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
      EXPECT_NEAR(besov_norm(f, {s, 2.0, r}, cut), amp * lp2 * sum, 1e-11);
      EXPECT_NEAR(besov_norm(f, {s, 4.0, r}, cut), amp * lp4 * sum, 1e-11);
    }
  }
  EXPECT_EQ(besov_norm(SpectralField(g, 1), {0.3, 2.0, 2.0}, cut), 0.0);
}

TEST(BesovNorm, DecompositionMatchesDirectNorm) {
  const Grid g = Grid::make(2, 32);
  const DyadicCutoff cut = DyadicCutoff::build(g);
  const SpectralField f = test::random_band_limited(g, 2, 11);
  const SpectralField h = test::random_band_limited(g, 2, 12);
  const BlockDecomposition bf(f, cut), bh(h, cut);
  const BesovIndex idx{-0.5, 3.0, 1.0};
  EXPECT_NEAR(bf.besov(idx), besov_norm(f, idx, cut), 1e-12);
  const BlockDecomposition* parts[] = {&bf, &bh};
  const double coeffs[] = {2.0, -0.5};
  const double comb = combination_besov(parts, coeffs, idx);
  EXPECT_NEAR(comb, besov_norm(2.0 * f - 0.5 * h, idx, cut), 1e-11);
  const double cancel[] = {1.0, 0.0};
  EXPECT_NEAR(combination_besov(parts, cancel, idx), bf.besov(idx), 1e-13);
}

/// ||lambda^{s - n/p}-scaled f(lambda .)|| on the dilated cell equals ||f|| for a band-limited f.
TEST(BesovNorm, DilationScaling) {
  const Grid g = Grid::make(2, 32);
  const SpectralField f = test::random_band_limited(g, 2, 13);
  const double s = 1.0, p = 2.0;
  const SpectralField d = dilate(f, 2.0);
  const double lhs = besov_norm(d, {s, p, 2.0}, DyadicCutoff::build(d.grid()));
  const double rhs = std::pow(2.0, s - 2.0 / p) * besov_norm(f, {s, p, 2.0}, DyadicCutoff::build(g));
  EXPECT_NEAR(lhs / rhs, 1.0, 0.02);
}

/// The two characterizations agree up to a constant; calibrate it on the |k| = 1 mode, then
/// other single modes must land within a factor 4.
TEST(DifferenceNorm, EquivalentToBlockNormOnSingleModes) {
  const Grid g = Grid::make(2, 32);
  const DyadicCutoff cut = DyadicCutoff::build(g);
  DifferenceNormOptions opts;
  opts.s = 0.5;
  opts.order = 1;
  opts.shift_samples = 4096;
  auto ratio = [&](std::array<int, 3> z) {
    const SpectralField f = test::cosine_mode(g, 1, 0, z);
    return difference_norm(f, opts) / besov_norm(f, {0.5, 2.0, 2.0}, cut);
  };
  const double calibration = ratio({1, 0, 0});
  ASSERT_TRUE(std::isfinite(calibration));
  ASSERT_GT(calibration, 0.0);
  for (std::array<int, 3> z : {std::array<int, 3>{2, 0, 0}, {0, 2, 0}, {3, 4, 0}}) {
    const double r = ratio(z) / calibration;
    EXPECT_GT(r, 0.25) << z[0] << "," << z[1];
    EXPECT_LT(r, 4.0) << z[0] << "," << z[1];
  }
  EXPECT_EQ(difference_norm(SpectralField(g, 1), opts), 0.0);
}

TEST(DifferenceNorm, OrderMustExceedRegularity) {
  const Grid g = Grid::make(2, 16);
  DifferenceNormOptions opts;
  opts.s = 1.5;
  opts.order = 1;
  EXPECT_THROW(difference_norm(test::cosine_mode(g, 1, 0, {1, 0, 0}), opts), ParameterError);
}

}  // namespace
}  // namespace gns
