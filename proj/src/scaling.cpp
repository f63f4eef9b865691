#include "gns/scaling.hpp"

#include <cmath>
#include <string>

#include "gns/besov.hpp"
#include "gns/error.hpp"
#include "gns/lorentz.hpp"

namespace gns {

namespace {

int power_of_two_exponent(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive");
  int e = 0;
  const double mant = std::frexp(lambda, &e);
  if (mant != 0.5) throw ParameterError("lambda must be a power of two");
  return e - 1;
}

}  // namespace

SpectralField dilate(const SpectralField& f, double lambda) {
  const int j = power_of_two_exponent(lambda);
  if (j == 0) return f;
  const Grid& g = f.grid();
  const long cell_points = j > 0 ? (g.points() >> j) : (static_cast<long>(g.points()) << -j);
  if (cell_points < 8 || cell_points > 4096)
    throw RangeError("dilation by " + std::to_string(lambda) + " leaves no representable cell");
  const Grid cell = Grid::make(g.dim(), static_cast<int>(cell_points), g.length() / lambda);
  SpectralField out(cell, f.components());
  for (std::size_t k = 0; k < g.size(); ++k) {
    bool nonzero = false;
    for (int c = 0; c < f.components(); ++c) nonzero = nonzero || f(c, k) != Complex{};
    if (!nonzero) continue;
    const Mode m = g.mode(k);
    for (int d = 0; d < g.dim(); ++d)
      if (2L * std::abs(m.index[d]) >= cell_points)
        throw RangeError("dilate is not resolved: lattice index " + std::to_string(m.index[d]) +
                         " reaches the Nyquist index of the dilated cell");
    const std::size_t kc = cell.flat_signed(m.index);
    for (int c = 0; c < f.components(); ++c) out(c, kc) = f(c, k);
  }
  return out;
}

double critical_initial_norm(const SpectralField& a, const HypothesisSet& h) {
  return besov_norm(a, {h.s0, h.p0, h.r}, DyadicCutoff::build(a.grid()));
}

double critical_trajectory_norm(const std::vector<double>& nodes,
                                const std::vector<SpectralField>& u, const HypothesisSet& h) {
  if (nodes.size() != u.size()) throw ShapeError("one field is needed per time node");
  if (u.empty()) throw ShapeError("empty trajectory");
  const DyadicCutoff cutoff = DyadicCutoff::build(u.front().grid());
  std::vector<double> values;
  for (const auto& f : u) values.push_back(besov_norm(f, {h.s + 2.0 * h.alpha, h.p, 1.0}, cutoff));
  return lorentz_norm(TimeSamples::make(nodes, std::move(values)), LorentzIndex::make(h.rho, h.r));
}

ScalingRatios scaling_invariance_check(const SpectralField& a, const std::vector<double>& nodes,
                                       const std::vector<SpectralField>& u,
                                       const HypothesisSet& h, double lambda) {
  ScalingRatios out;
  out.lambda = lambda;
  if (power_of_two_exponent(lambda) == 0) return out;
  const double amp = std::pow(lambda, (2.0 * h.alpha - 1.0) / h.m);

  const double a_norm = critical_initial_norm(a, h);
  const double a_scaled = critical_initial_norm(amp * dilate(a, lambda), h);
  out.initial = a_norm > 0.0 ? a_scaled / a_norm : 1.0;

  std::vector<double> scaled_nodes;
  std::vector<SpectralField> scaled_u;
  const double time_factor = std::pow(lambda, 2.0 * h.alpha);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    scaled_nodes.push_back(nodes[j] / time_factor);
    scaled_u.push_back(amp * dilate(u[j], lambda));
  }
  const double u_norm = critical_trajectory_norm(nodes, u, h);
  const double u_scaled = critical_trajectory_norm(scaled_nodes, scaled_u, h);
  out.temporal = u_norm > 0.0 ? u_scaled / u_norm : 1.0;
  return out;
}

}  // namespace gns
