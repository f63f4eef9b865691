#include "gns/besov.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gns/error.hpp"

namespace gns {

BesovIndex BesovIndex::make(double s, double p, double r) {
  if (!std::isfinite(s)) throw ParameterError("Besov regularity must be finite");
  if (!(p >= 1.0)) throw ParameterError("Besov integrability p must be >= 1");
  if (!(r >= 1.0)) throw ParameterError("Besov summation index r must be >= 1");
  return {s, p, r};
}

namespace {

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

double DyadicCutoff::low_pass(double r) {
  constexpr double lo = 3.0 / 4.0;
  constexpr double hi = 4.0 / 3.0;
  return 1.0 - smooth_step((r - lo) / (hi - lo));
}

double DyadicCutoff::profile(double r) { return low_pass(0.5 * r) - low_pass(r); }

DyadicCutoff DyadicCutoff::build(const Grid& grid) {
  const double k0 = grid.fundamental();
  const double k_nyq = k0 * grid.points() / 2.0;
  int q_min = static_cast<int>(std::floor(std::log2(k0 / kOuter))) - 1;
  while (std::ldexp(kOuter, q_min) <= k0) ++q_min;
  int q_max = static_cast<int>(std::floor(std::log2(k_nyq / kOuter))) + 1;
  while (std::ldexp(kOuter, q_max) > k_nyq) --q_max;
  if (q_max - q_min + 1 < 3)
    throw ConfigurationError("grid resolves only " + std::to_string(q_max - q_min + 1) +
                             " dyadic blocks; at least 3 are required");
  return DyadicCutoff(grid, q_min, q_max);
}

double DyadicCutoff::weight(int q, double magnitude) const {
  return profile(std::ldexp(magnitude, -q));
}

double DyadicCutoff::resolved_upper() const { return std::ldexp(kInner, q_max_ + 1); }

SpectralField dyadic_block(const SpectralField& f, int q, const DyadicCutoff& cutoff) {
  if (q < cutoff.q_min() || q > cutoff.q_max())
    throw RangeError("dyadic block " + std::to_string(q) + " outside resolved range [" +
                     std::to_string(cutoff.q_min()) + ", " + std::to_string(cutoff.q_max()) + "]");
  if (!(f.grid() == cutoff.grid())) throw ShapeError("cutoff was built for another grid");
  const Grid& g = f.grid();
  SpectralField out(g, f.components());
  for (std::size_t k = 1; k < g.size(); ++k) {
    const double w = cutoff.weight(q, std::sqrt(g.mode(k).magnitude_sq));
    if (w == 0.0) continue;
    for (int c = 0; c < f.components(); ++c) out(c, k) = w * f(c, k);
  }
  return out;
}

BlockDecomposition::BlockDecomposition(const SpectralField& f, const DyadicCutoff& cutoff)
    : q_min_(cutoff.q_min()), q_max_(cutoff.q_max()) {
  if (!(f.grid() == cutoff.grid())) throw ShapeError("cutoff was built for another grid");
  const Grid& g = f.grid();
  std::vector<double> magnitude(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) magnitude[k] = std::sqrt(g.mode(k).magnitude_sq);
  for (int q = q_min_; q <= q_max_; ++q) {
    SpectralField block(g, f.components());
    bool any = false;
    for (std::size_t k = 1; k < g.size(); ++k) {
      const double w = cutoff.weight(q, magnitude[k]);
      if (w == 0.0) continue;
      for (int c = 0; c < f.components(); ++c) {
        block(c, k) = w * f(c, k);
        any = any || f(c, k) != Complex{};
      }
    }
    empty_.push_back(!any);
    blocks_.push_back(any ? to_physical(block) : PhysicalField(g, f.components()));
  }
}

std::vector<double> BlockDecomposition::block_lp_norms(double p) const {
  if (auto it = cache_.find(p); it != cache_.end()) return it->second;
  std::vector<double> norms(blocks_.size(), 0.0);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (!empty_[i]) norms[i] = lp_norm(blocks_[i], p);
  cache_.emplace(p, norms);
  return norms;
}

double BlockDecomposition::block_lp(int q, double p) const {
  if (q < q_min_ || q > q_max_) throw RangeError("block index outside resolved range");
  return block_lp_norms(p)[q - q_min_];
}

double BlockDecomposition::besov(const BesovIndex& idx) const {
  const auto norms = block_lp_norms(idx.p);
  return combine_blocks(norms, q_min_, idx.s, idx.r);
}

double combination_besov(std::span<const BlockDecomposition* const> parts,
                         std::span<const double> coeffs, const BesovIndex& idx) {
  if (parts.empty() || parts.size() != coeffs.size())
    throw ShapeError("one coefficient is needed per decomposition");
  const int q_min = parts[0]->q_min();
  const int q_max = parts[0]->q_max();
  std::vector<double> norms;
  for (int q = q_min; q <= q_max; ++q) {
    const PhysicalField* first = nullptr;
    for (const auto* part : parts)
      if (!part->block_empty(q)) first = &part->block(q);
    if (first == nullptr) {
      norms.push_back(0.0);
      continue;
    }
    PhysicalField sum(first->grid, first->components);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i]->block_empty(q) || coeffs[i] == 0.0) continue;
      const auto& src = parts[i]->block(q).values;
      if (src.size() != sum.values.size()) throw ShapeError("decompositions differ in shape");
      for (std::size_t k = 0; k < src.size(); ++k) sum.values[k] += coeffs[i] * src[k];
    }
    norms.push_back(lp_norm(sum, idx.p));
  }
  return combine_blocks(norms, q_min, idx.s, idx.r);
}

double combine_blocks(std::span<const double> block_lp, int q_min, double s, double r) {
  if (std::isinf(r)) {
    double sup = 0.0;
    for (std::size_t i = 0; i < block_lp.size(); ++i)
      sup = std::max(sup, std::exp2(s * (q_min + static_cast<int>(i))) * block_lp[i]);
    return sup;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < block_lp.size(); ++i) {
    if (block_lp[i] == 0.0) continue;
    acc += std::pow(std::exp2(s * (q_min + static_cast<int>(i))) * block_lp[i], r);
  }
  return std::pow(acc, 1.0 / r);
}

double besov_norm(const SpectralField& f, const BesovIndex& idx, const DyadicCutoff& cutoff) {
  return BlockDecomposition(f, cutoff).besov(idx);
}

double difference_norm(const SpectralField& f, const DifferenceNormOptions& opts) {
  if (!(opts.s > 0.0)) throw ParameterError("difference characterisation needs s > 0");
  if (opts.order <= opts.s)
    throw ParameterError("difference order k must exceed s (k = " + std::to_string(opts.order) +
                         ", s = " + std::to_string(opts.s) + ")");
  if (opts.shift_samples < 100)
    throw ConfigurationError("difference_norm needs at least 100 shift samples");
  if (!(opts.p >= 1.0) || !(opts.r >= 1.0)) throw ParameterError("p and r must be >= 1");

  const Grid& g = f.grid();
  const int n = g.dim();
  const int k = opts.order;
  const double rho_min = g.length() / g.points();
  const double rho_max = 0.5 * g.length();
  const double log_span = std::log(rho_max / rho_min);
  const double sphere = n == 2 ? kTwoPi : 2.0 * kTwoPi;

  std::vector<double> binom(k + 1, 1.0);
  for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;

  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Mode> modes(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) modes[i] = g.mode(i);

  double acc = 0.0;
  for (int sample = 0; sample < opts.shift_samples; ++sample) {
    const double radius = rho_min * std::exp(log_span * unit(rng));
    std::array<double, 3> dir{};
    double norm = 0.0;
    do {
      norm = 0.0;
      for (int d = 0; d < n; ++d) {
        dir[d] = gauss(rng);
        norm += dir[d] * dir[d];
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    std::array<double, 3> y{};
    for (int d = 0; d < n; ++d) y[d] = radius * dir[d] / norm;

    // Delta_y^k f = sum_j (-1)^{k-j} C(k,j) f(x + j y), realised by exact phase shifts.
    SpectralField diff(g, f.components());
    for (std::size_t i = 1; i < g.size(); ++i) {
      double phase = 0.0;
      for (int d = 0; d < n; ++d) phase += modes[i].derivative[d] * y[d];
      Complex symbol = 0.0;
      for (int j = 0; j <= k; ++j) {
        const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
        symbol += sign * binom[j] * std::polar(1.0, j * phase);
      }
      for (int c = 0; c < f.components(); ++c) diff(c, i) = symbol * f(c, i);
    }
    const double dn = lp_norm(to_physical(diff), opts.p);
    if (std::isinf(opts.r)) {
      acc = std::max(acc, dn / std::pow(radius, opts.s));
    } else {
      acc += std::pow(dn, opts.r) * std::pow(radius, -opts.s * opts.r);
    }
  }
  if (std::isinf(opts.r)) return acc;
  const double integral = sphere * log_span * acc / opts.shift_samples;
  return std::pow(integral, 1.0 / opts.r);
}

}  // namespace gns
