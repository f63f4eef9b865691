#pragma once

#include <vector>

#include "gns/hypotheses.hpp"
#include "gns/spectral.hpp"

namespace gns {

/// f(lambda x) on its period cell [0, L/lambda)^n, sampled with N/lambda points so the
/// coefficient of lattice point z is unchanged. lambda must be a power of two; throws
/// RangeError when a nonzero coefficient would land on or beyond the cell's Nyquist
/// index or the cell grid is not representable.
SpectralField dilate(const SpectralField& f, double lambda);

/// ||a||_{B^{s0}_{p0,r}}.
double critical_initial_norm(const SpectralField& a, const HypothesisSet& h);

/// ||u||_{L^{rho,r}_T(B^{s+2alpha}_{p,1})} of a step trajectory u_j on (t_{j-1}, t_j].
double critical_trajectory_norm(const std::vector<double>& nodes,
                                const std::vector<SpectralField>& u, const HypothesisSet& h);

struct ScalingRatios {
  double lambda = 1.0;
  double initial = 1.0;
  double temporal = 1.0;
};

/// Ratios of the critical norms of lambda^{(2alpha-1)/m} a(lambda x) and of
/// u_lambda(x, t) = lambda^{(2alpha-1)/m} u(lambda x, lambda^{2alpha} t) to those of a and u.
ScalingRatios scaling_invariance_check(const SpectralField& a, const std::vector<double>& nodes,
                                       const std::vector<SpectralField>& u,
                                       const HypothesisSet& h, double lambda);

}  // namespace gns
