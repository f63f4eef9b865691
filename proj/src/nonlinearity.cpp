#include "gns/nonlinearity.hpp"

#include <cmath>
#include <vector>

#include "gns/error.hpp"

namespace gns {

PowerLaw PowerLaw::make(double m, int dealias_factor) {
  if (!(m > 0.0) || !std::isfinite(m)) throw ParameterError("power-law exponent m must be > 0");
  if (dealias_factor < 2 || dealias_factor > 4)
    throw ParameterError("dealias factor must be 2, 3 or 4");
  return {m, dealias_factor};
}

PhysicalField apply_power_physical(const PhysicalField& u, double m) {
  if (!(m > 0.0)) throw ParameterError("power-law exponent m must be > 0");
  PhysicalField out = u;
  if (m == 1.0) return out;
  const std::size_t size = u.grid.size();
  for (std::size_t i = 0; i < size; ++i) {
    double mag2 = 0.0;
    for (int c = 0; c < u.components; ++c) {
      const double x = u.values[c * size + i];
      mag2 += x * x;
    }
    const double scale = mag2 > 0.0 ? std::pow(mag2, 0.5 * (m - 1.0)) : 0.0;
    for (int c = 0; c < u.components; ++c) out.values[c * size + i] *= scale;
  }
  return out;
}

SpectralField apply_power(const SpectralField& u, const PowerLaw& pl) {
  if (!(pl.m > 0.0)) throw ParameterError("power-law exponent m must be > 0");
  if (pl.m == 1.0) return u;
  const PhysicalField fine = to_physical_refined(u, pl.dealias_factor);
  return truncate_to(apply_power_physical(fine, pl.m), u.grid());
}

SpectralField convective_term(const SpectralField& u, const SpectralField& v, const PowerLaw& pl) {
  if (!(u.grid() == v.grid())) throw ShapeError("convective term needs fields on one grid");
  if (!u.is_vector()) throw ShapeError("advecting field must have one component per axis");
  if (!(pl.m > 0.0)) throw ParameterError("power-law exponent m must be > 0");
  const Grid& g = u.grid();
  const int n = g.dim();
  const PhysicalField ju = apply_power_physical(to_physical_refined(u, pl.dealias_factor), pl.m);
  const std::size_t fsize = ju.grid.size();

  PhysicalField product(ju.grid, v.components());
  for (int j = 0; j < n; ++j) {
    const PhysicalField dv =
        to_physical_refined(apply_multiplier(v, MultiplierSymbol::derivative(j)), pl.dealias_factor);
    auto uj = ju.component(j);
    for (int c = 0; c < v.components(); ++c) {
      auto dst = product.component(c);
      auto src = dv.component(c);
      for (std::size_t k = 0; k < fsize; ++k) dst[k] += uj[k] * src[k];
    }
  }
  return truncate_to(product, g);
}

SpectralField multiply_fields(const SpectralField& a, const SpectralField& b, int factor) {
  if (!(a.grid() == b.grid())) throw ShapeError("product needs fields on one grid");
  if (!a.is_scalar()) throw ShapeError("left factor must be scalar");
  const PhysicalField fa = to_physical_refined(a, factor);
  PhysicalField fb = to_physical_refined(b, factor);
  const std::size_t size = fa.grid.size();
  for (int c = 0; c < fb.components; ++c)
    for (std::size_t k = 0; k < size; ++k) fb.values[c * size + k] *= fa.values[k];
  return truncate_to(fb, a.grid());
}

DifferenceBound pointwise_difference_bound(std::span<const double> a, std::span<const double> b,
                                           double m) {
  if (a.size() != b.size()) throw ShapeError("vectors must have equal length");
  if (!(m > 0.0)) throw ParameterError("power-law exponent m must be > 0");
  double na2 = 0.0, nb2 = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na2 += a[i] * a[i];
    nb2 += b[i] * b[i];
    d2 += (a[i] - b[i]) * (a[i] - b[i]);
  }
  const double na = std::sqrt(na2), nb = std::sqrt(nb2), d = std::sqrt(d2);
  const double sa = na > 0.0 ? std::pow(na, m - 1.0) : 0.0;
  const double sb = nb > 0.0 ? std::pow(nb, m - 1.0) : 0.0;
  double lhs2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = sa * a[i] - sb * b[i];
    lhs2 += diff * diff;
  }
  DifferenceBound res;
  res.lhs = std::sqrt(lhs2);
  if (m > 1.0) {
    res.rhs = m * (sa + sb) * d;
  } else {
    res.rhs = 6.0 * std::pow(d, m);
  }
  res.ok = res.lhs <= res.rhs + 1e-12;
  return res;
}

}  // namespace gns
