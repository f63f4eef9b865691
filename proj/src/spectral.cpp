#include "gns/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fft.hpp"
#include "gns/error.hpp"

namespace gns {

SpectralField::SpectralField(const Grid& grid, int components)
    : grid_(grid), components_(components), coeffs_(components * grid.size()) {
  if (components < 1) throw ShapeError("a field needs at least one component");
}

std::span<Complex> SpectralField::component(int c) {
  return {coeffs_.data() + c * grid_.size(), grid_.size()};
}

std::span<const Complex> SpectralField::component(int c) const {
  return {coeffs_.data() + c * grid_.size(), grid_.size()};
}

void SpectralField::require_same_shape(const SpectralField& other) const {
  if (!(grid_ == other.grid_) || components_ != other.components_)
    throw ShapeError("fields differ in grid or component count");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_shape(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

PhysicalField to_physical(const SpectralField& f) {
  const Grid& g = f.grid();
  PhysicalField out(g, f.components());
  std::vector<Complex> buf(g.size());
  for (int c = 0; c < f.components(); ++c) {
    detail::fft_inverse(g, f.component(c), buf);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < g.size(); ++k) dst[k] = buf[k].real();
  }
  return out;
}

SpectralField to_spectral(const PhysicalField& f) {
  const Grid& g = f.grid;
  SpectralField out(g, f.components);
  std::vector<Complex> buf(g.size());
  for (int c = 0; c < f.components; ++c) {
    auto src = f.component(c);
    for (std::size_t k = 0; k < g.size(); ++k) buf[k] = src[k];
    detail::fft_forward(g, buf, out.component(c));
  }
  return out;
}

PhysicalField to_physical_refined(const SpectralField& f, int factor) {
  const Grid& coarse = f.grid();
  const Grid fine = coarse.refined(factor);
  PhysicalField out(fine, f.components());
  std::vector<Complex> buf(fine.size());
  for (int c = 0; c < f.components(); ++c) {
    std::fill(buf.begin(), buf.end(), Complex{});
    auto src = f.component(c);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      if (src[k] == Complex{}) continue;
      const Mode m = coarse.mode(k);
      if (m.has_nyquist) continue;
      buf[fine.flat_signed(m.index)] = src[k];
    }
    detail::fft_inverse(fine, buf, buf);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < fine.size(); ++k) dst[k] = buf[k].real();
  }
  return out;
}

SpectralField truncate_to(const PhysicalField& fine, const Grid& coarse) {
  const Grid& fg = fine.grid;
  if (fg.dim() != coarse.dim() || fg.length() != coarse.length() ||
      fg.points() < coarse.points())
    throw ShapeError("refined field does not cover the target grid");
  SpectralField out(coarse, fine.components);
  std::vector<Complex> buf(fg.size());
  for (int c = 0; c < fine.components; ++c) {
    auto src = fine.component(c);
    for (std::size_t k = 0; k < fg.size(); ++k) buf[k] = src[k];
    detail::fft_forward(fg, buf, buf);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      const Mode m = coarse.mode(k);
      dst[k] = m.has_nyquist ? Complex{} : buf[fg.flat_signed(m.index)];
    }
  }
  return out;
}

MultiplierSymbol MultiplierSymbol::power(double gamma) {
  if (!std::isfinite(gamma)) throw ParameterError("power symbol exponent must be finite");
  MultiplierSymbol m;
  m.kind_ = Kind::Power;
  m.a_ = gamma;
  return m;
}

MultiplierSymbol MultiplierSymbol::heat(double t, double alpha) {
  if (!std::isfinite(t) || !std::isfinite(alpha))
    throw ParameterError("heat symbol parameters must be finite");
  MultiplierSymbol m;
  m.kind_ = Kind::Heat;
  m.a_ = t;
  m.b_ = alpha;
  return m;
}

MultiplierSymbol MultiplierSymbol::derivative(int axis) {
  if (axis < 0 || axis > 2) throw ParameterError("derivative axis out of range");
  MultiplierSymbol m;
  m.kind_ = Kind::Derivative;
  m.axis_ = axis;
  return m;
}

MultiplierSymbol MultiplierSymbol::radial(std::function<double(double)> profile) {
  MultiplierSymbol m;
  m.kind_ = Kind::Radial;
  m.profile_ = std::move(profile);
  return m;
}

MultiplierSymbol MultiplierSymbol::tabulated(std::vector<double> table, double step) {
  if (table.empty() || !(step > 0.0)) throw ParameterError("radial table needs values and step > 0");
  return radial([table = std::move(table), step](double r) {
    const double x = r / step;
    const auto j = static_cast<std::size_t>(std::floor(x));
    if (j + 1 >= table.size()) return j + 1 == table.size() && x == double(j) ? table.back() : 0.0;
    const double w = x - j;
    return (1.0 - w) * table[j] + w * table[j + 1];
  });
}

Complex MultiplierSymbol::evaluate(const Mode& mode) const {
  const double k2 = mode.magnitude_sq;
  switch (kind_) {
    case Kind::Power:
      if (k2 == 0.0) return a_ == 0.0 ? 1.0 : 0.0;
      return std::pow(k2, a_);
    case Kind::Heat:
      if (k2 == 0.0) return 1.0;
      return std::exp(-a_ * std::pow(k2, b_));
    case Kind::Derivative:
      return Complex{0.0, mode.derivative[axis_]};
    case Kind::Radial:
      return profile_(std::sqrt(k2));
  }
  return 0.0;
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& m) {
  const Grid& g = f.grid();
  if (m.kind() == MultiplierSymbol::Kind::Derivative && m.axis() >= g.dim())
    throw ShapeError("derivative axis exceeds the grid dimension");
  SpectralField out(g, f.components());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Mode mode = g.mode(k);
    const Complex s = m.evaluate(mode);
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      std::ostringstream os;
      os << "symbol is not finite at wavevector (";
      for (int d = 0; d < g.dim(); ++d) os << (d ? ", " : "") << mode.wavevector[d];
      os << ")";
      throw EvaluationError(os.str());
    }
    for (int c = 0; c < f.components(); ++c) out(c, k) = s * f(c, k);
  }
  return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double alpha) {
  const int n = f.grid().dim();
  if (!std::isfinite(alpha)) throw ParameterError("fractional power must be a finite real");
  if (!(alpha > -0.5 * n))
    throw ParameterError("fractional power must exceed -n/2");
  SpectralField out = apply_multiplier(f, MultiplierSymbol::power(alpha));
  for (int c = 0; c < out.components(); ++c) out(c, 0) = 0.0;
  return out;
}

SpectralField gradient(const SpectralField& f) {
  if (!f.is_scalar()) throw ShapeError("gradient expects a scalar field");
  const Grid& g = f.grid();
  SpectralField out(g, g.dim());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Mode m = g.mode(k);
    for (int j = 0; j < g.dim(); ++j) out(j, k) = Complex{0.0, m.derivative[j]} * f(0, k);
  }
  return out;
}

SpectralField divergence(const SpectralField& u) {
  const Grid& g = u.grid();
  if (!u.is_vector()) throw ShapeError("divergence expects a field with n components");
  SpectralField out(g, 1);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Mode m = g.mode(k);
    Complex acc = 0.0;
    for (int j = 0; j < g.dim(); ++j) acc += Complex{0.0, m.derivative[j]} * u(j, k);
    out(0, k) = acc;
  }
  return out;
}

SpectralField leray_project(const SpectralField& u) {
  const Grid& g = u.grid();
  if (!u.is_vector()) throw ShapeError("Leray projection expects a field with n components");
  SpectralField out = u;
  const int n = g.dim();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Mode m = g.mode(k);
    double kk = 0.0;
    for (int j = 0; j < n; ++j) kk += m.derivative[j] * m.derivative[j];
    if (kk == 0.0) continue;
    Complex dot = 0.0;
    for (int j = 0; j < n; ++j) dot += m.derivative[j] * u(j, k);
    for (int j = 0; j < n; ++j) out(j, k) -= m.derivative[j] * dot / kk;
  }
  return out;
}

SpectralField semigroup_apply(const SpectralField& f, double t, double alpha) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ParameterError("semigroup time must be >= 0");
  if (!(alpha > 0.0)) throw ParameterError("semigroup order alpha must be > 0");
  if (t == 0.0) return f;
  return apply_multiplier(f, MultiplierSymbol::heat(t, alpha));
}

SpectralField exponential_step(const SpectralField& u, const SpectralField& g, double h,
                               double alpha) {
  if (!(u.grid() == g.grid()) || u.components() != g.components())
    throw ShapeError("exponential step needs fields of one shape");
  if (!(h >= 0.0) || !std::isfinite(h)) throw ParameterError("step length must be >= 0");
  if (!(alpha > 0.0)) throw ParameterError("semigroup order alpha must be > 0");
  const Grid& grid = u.grid();
  SpectralField out(grid, u.components());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double lambda = std::pow(grid.mode(k).magnitude_sq, alpha);
    const double decay = std::exp(-h * lambda);
    const double phi = lambda > 0.0 ? -std::expm1(-h * lambda) / lambda : h;
    for (int c = 0; c < u.components(); ++c) out(c, k) = decay * u(c, k) + phi * g(c, k);
  }
  return out;
}

SpectralField remove_mean(SpectralField f) {
  for (int c = 0; c < f.components(); ++c) f(c, 0) = 0.0;
  return f;
}

double l2_norm(const SpectralField& f) {
  double acc = 0.0;
  for (const auto& c : f.coefficients()) acc += std::norm(c);
  return std::sqrt(acc * f.grid().box_volume());
}

Complex inner_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid()) || a.components() != b.components())
    throw ShapeError("inner product of fields with different shapes");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.coefficients().size(); ++i)
    acc += a.coefficients()[i] * std::conj(b.coefficients()[i]);
  return acc * a.grid().box_volume();
}

double lp_norm(const PhysicalField& f, double p) {
  const std::size_t size = f.grid.size();
  if (!(p >= 1.0)) throw ParameterError("L^p exponent must be >= 1");
  const bool sup = std::isinf(p);
  double acc = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    double mag2 = 0.0;
    for (int c = 0; c < f.components; ++c) {
      const double v = f.values[c * size + k];
      mag2 += v * v;
    }
    if (sup) {
      acc = std::max(acc, mag2);
    } else if (p == 2.0) {
      acc += mag2;
    } else {
      acc += std::pow(mag2, 0.5 * p);
    }
  }
  if (sup) return std::sqrt(acc);
  return std::pow(acc * f.grid.cell_volume(), 1.0 / p);
}

double max_coefficient(const SpectralField& f) {
  double m = 0.0;
  for (const auto& c : f.coefficients()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace gns
