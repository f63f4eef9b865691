#include <gtest/gtest.h>

#include <cmath>

#include "gns/error.hpp"
#include "gns/named_fields.hpp"
#include "gns/scaling.hpp"
#include "test_util.hpp"

namespace gns {
namespace {

HypothesisSet h0() {
  HypothesisInput in;
  in.m = 1;
  in.n = 3;
  in.p = 2;
  in.alpha = 1;
  in.rho = 4;
  return check_hypotheses(in);
}

TEST(Dilate, SameLatticeOnSmallerCell) {
  const Grid g = Grid::make(2, 32);
  const SpectralField f = test::random_band_limited(g, 2, 1);
  const SpectralField d = dilate(f, 2.0);
  EXPECT_EQ(d.grid().points(), 16);
  EXPECT_DOUBLE_EQ(d.grid().length(), kPi);
  const PhysicalField pf = to_physical(f), pd = to_physical(d);
  // d(x) = f(2x): point j of the dilated cell is point 2j of the original, same spacing.
  for (std::size_t k = 0; k < d.grid().size(); ++k) {
    const auto idx = d.grid().unflatten(k);
    const std::size_t src = g.flat({2 * idx[0] % 32, 2 * idx[1] % 32, 0});
    EXPECT_NEAR(pd.component(0)[k], pf.component(0)[src], 1e-13);
  }
  EXPECT_EQ(test::max_abs_diff(dilate(f, 1.0), f), 0.0);
}

TEST(Dilate, RejectsUnresolvedAndNonDyadic) {
  const Grid g = Grid::make(2, 32);
  EXPECT_THROW(dilate(test::cosine_mode(g, 1, 0, {8, 0, 0}), 2.0), RangeError);
  EXPECT_THROW(dilate(test::cosine_mode(g, 1, 0, {1, 0, 0}), 3.0), Error);
}

TEST(Scaling, SingleModeInitialNormAtLambdaTwo) {
  const Grid g = Grid::make(3, 32);
  const SpectralField a = single_mode(g, {2, 0, 0});
  const HypothesisSet h = h0();
  const double ratio = critical_initial_norm(dilate(a, 2.0), h) * std::pow(2.0, (2 * h.alpha - 1) / h.m) /
                       critical_initial_norm(a, h);
  EXPECT_NEAR(ratio, 1.0, 0.02);
}

TEST(Scaling, IdentityAtLambdaOne) {
  const Grid g = Grid::make(2, 32);
  const SpectralField a = single_mode(g, {1, 2, 0});
  HypothesisInput in;
  in.m = 2;
  in.n = 2;
  in.p = 2;
  in.alpha = 1;
  in.rho = 6;
  const HypothesisSet h = check_hypotheses(in);
  const auto nodes = log_uniform_nodes(1.0, 16);
  std::vector<SpectralField> u;
  for (double t : nodes) u.push_back(semigroup_apply(a, t, 1.0));
  const ScalingRatios one = scaling_invariance_check(a, nodes, u, h, 1.0);
  EXPECT_EQ(one.initial, 1.0);
  EXPECT_EQ(one.temporal, 1.0);
  const ScalingRatios two = scaling_invariance_check(a, nodes, u, h, 2.0);
  EXPECT_NEAR(two.initial, 1.0, 0.02);
  EXPECT_NEAR(two.temporal, 1.0, 0.02);
}

}  // namespace
}  // namespace gns
