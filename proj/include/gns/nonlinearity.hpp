#pragma once

#include <span>

#include "gns/spectral.hpp"

namespace gns {

/// J_m(u) = |u|^{m-1} u evaluated on a grid refined by dealias_factor.
struct PowerLaw {
  double m = 1.0;
  int dealias_factor = 2;

  /// Throws ParameterError unless m > 0 and dealias_factor is 2, 3 or 4.
  static PowerLaw make(double m, int dealias_factor = 2);
};

/// Pointwise J_m on point values, using the Euclidean magnitude across components.
PhysicalField apply_power_physical(const PhysicalField& u, double m);

/// m == 1 returns u unchanged.
SpectralField apply_power(const SpectralField& u, const PowerLaw& pl);

/// Component i is sum_j J_m(u)_j d_j v_i, products formed on the refined grid.
SpectralField convective_term(const SpectralField& u, const SpectralField& v, const PowerLaw& pl);

/// Pointwise product of a scalar or vector field b with a scalar field a (or of two
/// scalars), formed on a grid refined by factor and truncated.
SpectralField multiply_fields(const SpectralField& a, const SpectralField& b, int factor = 2);

struct DifferenceBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = true;
};

/// lhs = |J_m(a) - J_m(b)|; rhs = m(|a|^{m-1} + |b|^{m-1})|a-b| for m > 1 and
/// 6|a-b|^m for 0 < m <= 1.
DifferenceBound pointwise_difference_bound(std::span<const double> a, std::span<const double> b,
                                           double m);

}  // namespace gns
