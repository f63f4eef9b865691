#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "gns/grid.hpp"

namespace gns {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar (1 component) or vector field on a Grid.
/// Storage is component-major; each component holds grid.size() coefficients with
/// f(x) = sum_k c_k exp(i k.x).
class SpectralField {
 public:
  SpectralField(const Grid& grid, int components);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  bool is_scalar() const { return components_ == 1; }
  bool is_vector() const { return components_ == grid_.dim(); }

  std::span<Complex> component(int c);
  std::span<const Complex> component(int c) const;
  Complex& operator()(int c, std::size_t k) { return coeffs_[c * grid_.size() + k]; }
  const Complex& operator()(int c, std::size_t k) const { return coeffs_[c * grid_.size() + k]; }

  std::vector<Complex>& coefficients() { return coeffs_; }
  const std::vector<Complex>& coefficients() const { return coeffs_; }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

 private:
  void require_same_shape(const SpectralField& other) const;

  Grid grid_;
  int components_;
  std::vector<Complex> coeffs_;
};

/// Point values of a field, same layout as SpectralField.
struct PhysicalField {
  Grid grid;
  int components;
  std::vector<double> values;

  PhysicalField(const Grid& g, int c) : grid(g), components(c), values(c * g.size(), 0.0) {}
  std::span<double> component(int c) { return {values.data() + c * grid.size(), grid.size()}; }
  std::span<const double> component(int c) const {
    return {values.data() + c * grid.size(), grid.size()};
  }
};

PhysicalField to_physical(const SpectralField& f);
SpectralField to_spectral(const PhysicalField& f);

/// Zero-pads the spectrum onto a grid refined by `factor` and synthesizes point values.
/// Nyquist modes of the coarse grid are dropped.
PhysicalField to_physical_refined(const SpectralField& f, int factor);
/// Analyses point values on a refined grid and keeps the non-Nyquist modes of `coarse`.
SpectralField truncate_to(const PhysicalField& fine, const Grid& coarse);

/// A scalar Fourier symbol drawn from a fixed family.
class MultiplierSymbol {
 public:
  enum class Kind { Power, Heat, Derivative, Radial };

  /// |xi|^{2 gamma}; value 0 at xi = 0 unless gamma == 0.
  static MultiplierSymbol power(double gamma);
  /// exp(-t |xi|^{2 alpha}); value 1 at xi = 0.
  static MultiplierSymbol heat(double t, double alpha);
  /// i xi_axis using the Nyquist-free derivative wavevector.
  static MultiplierSymbol derivative(int axis);
  /// profile(|xi|).
  static MultiplierSymbol radial(std::function<double(double)> profile);
  /// Linear interpolation in a table sampled at |xi| = j * step; zero beyond the table.
  static MultiplierSymbol tabulated(std::vector<double> table, double step);

  Kind kind() const { return kind_; }
  int axis() const { return axis_; }
  Complex evaluate(const Mode& mode) const;

 private:
  MultiplierSymbol() = default;

  Kind kind_ = Kind::Power;
  double a_ = 0.0;
  double b_ = 0.0;
  int axis_ = 0;
  std::function<double(double)> profile_;
};

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSymbol& m);
SpectralField fractional_laplacian(const SpectralField& f, double alpha);
SpectralField gradient(const SpectralField& f);
SpectralField divergence(const SpectralField& u);
SpectralField leray_project(const SpectralField& u);
SpectralField semigroup_apply(const SpectralField& f, double t, double alpha);
/// One exact step of u' + (-Delta)^alpha u = g with g frozen over a step of length h:
/// e^{-h A} u + (1 - e^{-h A}) A^{-1} g, the zero-mode factor being h.
SpectralField exponential_step(const SpectralField& u, const SpectralField& g, double h,
                               double alpha);

/// Drops the zero mode of every component.
SpectralField remove_mean(SpectralField f);

/// Discrete L^2 norm over the box, computed spectrally (Parseval).
double l2_norm(const SpectralField& f);
/// Discrete L^2 inner product <a, b> over the box.
Complex inner_product(const SpectralField& a, const SpectralField& b);
/// Discrete L^p norm of the pointwise Euclidean magnitude, quadrature weight (L/N)^n.
double lp_norm(const PhysicalField& f, double p);
/// Largest coefficient modulus.
double max_coefficient(const SpectralField& f);

}  // namespace gns
