#include "gns/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gns/besov.hpp"
#include "gns/error.hpp"
#include "gns/lorentz.hpp"
#include "gns/nonlinearity.hpp"
#include "gns/parallel.hpp"
#include "gns/random_fields.hpp"

namespace gns {

namespace {

struct Names {
  InequalityId id;
  const char* name;
  const char* flag;
};

constexpr std::array<Names, 11> kNames = {{
    {InequalityId::Prod1, "PROD1", "prod1"},
    {InequalityId::Prod2, "PROD2", "prod2"},
    {InequalityId::PowSmall, "POW_SMALL", "pow-small"},
    {InequalityId::Pow, "POW", "pow"},
    {InequalityId::Diff, "DIFF", "diff"},
    {InequalityId::Semi, "SEMI", "semi"},
    {InequalityId::MaxReg, "MAXREG", "maxreg"},
    {InequalityId::Duhamel, "DUHAMEL", "duhamel"},
    {InequalityId::BilinM1, "BILIN_M1", "bilin-m1"},
    {InequalityId::Bilin, "BILIN", "bilin"},
    {InequalityId::BilinDiff, "BILIN_DIFF", "bilin-diff"},
}};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Exponent of J_m used by POW_SMALL.
double small_power(const HypothesisSet& h) { return (h.m > 1.0 && h.m < 2.0) ? h.m - 1.0 : 0.5; }

double pow_r(const HypothesisSet& h) { return std::min(h.r, std::min(2.0, h.p)); }

double diff_s(const HypothesisSet& h) {
  const double bound = h.m < 2.0 ? std::min(h.m - 1.0, (h.m - 1.0) * (h.m - 1.0) * h.n / h.p)
                                 : std::min(h.m - 1.0, h.n / h.p);
  return 0.5 * bound;
}

double lorentz(const std::vector<double>& nodes, std::vector<double> values, double rho, double r) {
  return lorentz_norm(TimeSamples::make(nodes, std::move(values)), LorentzIndex::make(rho, r));
}

// Per-sample context built once per estimate.
struct Lab {
  const HypothesisSet& h;
  const LabConfig& cfg;
  Grid grid;
  DyadicCutoff cutoff;
  std::vector<double> nodes;

  Lab(const HypothesisSet& hs, const LabConfig& c)
      : h(hs),
        cfg(c),
        grid(Grid::make(hs.n, c.points)),
        cutoff(DyadicCutoff::build(grid)),
        nodes(log_uniform_nodes(c.horizon / std::pow(grid.fundamental(), 2.0 * hs.alpha),
                                static_cast<std::size_t>(c.time_nodes))) {}

  SpectralField field(Rng& rng, int components, bool solenoidal) const {
    FieldSpec spec;
    spec.components = components;
    spec.sigma = cfg.sigma;
    spec.band = cfg.band;
    spec.solenoidal = solenoidal;
    spec.l2_norm = 1.0;
    return random_field(grid, spec, rng);
  }
  SpectralField vector_field(Rng& rng, bool solenoidal = true) const {
    return field(rng, grid.dim(), solenoidal);
  }
  BlockDecomposition blocks(const SpectralField& f) const { return BlockDecomposition(f, cutoff); }
  double besov(const SpectralField& f, double s, double p, double r) const {
    return blocks(f).besov(BesovIndex{s, p, r});
  }
  PowerLaw power(double m) const { return PowerLaw::make(m, cfg.dealias_factor); }
};

SampleRatio sample_prod(const Lab& lab, Rng& rng, bool shifted) {
  const auto& h = lab.h;
  const double s = h.n / (2.0 * h.p);
  const double p1 = 2.0 * h.p;
  const SpectralField f = lab.field(rng, 1, false);
  const SpectralField g = lab.field(rng, 1, false);
  const SpectralField fg = multiply_fields(f, g, lab.cfg.dealias_factor);
  const auto bf = lab.blocks(f), bg = lab.blocks(g);
  SampleRatio out;
  out.lhs = lab.besov(fg, s, h.p, h.r);
  if (shifted) {
    const double d = 0.5;
    out.rhs = bf.besov({s + d, p1, h.r}) * bg.besov({-d, p1, kInf}) +
              bf.besov({-d, p1, kInf}) * bg.besov({s + d, p1, h.r});
  } else {
    const double lf = lp_norm(to_physical(f), p1), lg = lp_norm(to_physical(g), p1);
    out.rhs = bf.besov({s, p1, h.r}) * lg + lf * bg.besov({s, p1, h.r});
  }
  return out;
}

SampleRatio sample_pow_small(const Lab& lab, Rng& rng) {
  const auto& h = lab.h;
  const double mp = small_power(h);
  const double s = 0.5 * mp;
  const SpectralField f = lab.vector_field(rng, false);
  SampleRatio out;
  out.lhs = lab.besov(apply_power(f, lab.power(mp)), s, h.p, h.r);
  out.rhs = std::pow(lab.besov(f, s / mp, mp * h.p, mp * h.r), mp);
  return out;
}

SampleRatio sample_pow(const Lab& lab, Rng& rng) {
  const auto& h = lab.h;
  const double s = 0.5 * std::min(h.m, h.n / h.p);
  const double r = pow_r(h);
  const SpectralField f = lab.vector_field(rng, false);
  const double sigma = s / h.m + (1.0 - 1.0 / h.m) * h.n / h.p;
  SampleRatio out;
  out.lhs = lab.besov(apply_power(f, lab.power(h.m)), s, h.p, r);
  out.rhs = std::pow(lab.besov(f, sigma, h.p, r), h.m);
  return out;
}

SampleRatio sample_diff(const Lab& lab, Rng& rng) {
  const auto& h = lab.h;
  const double s = diff_s(h);
  const double r0 = h.m < 2.0 ? 1.0 : h.r;
  const double sigma = s / h.m + (1.0 - 1.0 / h.m) * h.n / h.p;
  const SpectralField f = lab.vector_field(rng, false);
  const SpectralField w = lab.vector_field(rng, false);
  const double eps = std::exp(std::log(1e-2) * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  const SpectralField g = f + eps * w;
  const PowerLaw pl = lab.power(h.m);
  SampleRatio out;
  out.lhs = lab.besov(apply_power(f, pl) - apply_power(g, pl), s, h.p, h.r);
  out.rhs = (std::pow(lab.besov(f, sigma, h.p, r0), h.m - 1.0) +
             std::pow(lab.besov(g, sigma, h.p, r0), h.m - 1.0)) *
            lab.besov(f - g, sigma, h.p, r0);
  return out;
}

SampleRatio sample_semi(const Lab& lab, Rng& rng) {
  const auto& h = lab.h;
  const SpectralField a = lab.vector_field(rng);
  std::vector<double> values;
  for (double t : lab.nodes)
    values.push_back(lab.besov(semigroup_apply(a, t, h.alpha), h.s + 2.0 * h.alpha, h.p, 1.0));
  SampleRatio out;
  out.lhs = lorentz(lab.nodes, std::move(values), h.rho, h.r);
  out.rhs = lab.besov(a, h.s0, h.p0, h.r);
  return out;
}

SampleRatio sample_maxreg(const Lab& lab, Rng& rng) {
  const auto& h = lab.h;
  const double q = h.r;
  const SpectralField a = lab.vector_field(rng);
  const SpectralField force = lab.vector_field(rng);
  const TimeSamples theta = random_steps(lab.nodes, rng);
  const double force_norm = lab.besov(force, h.s, h.p, q);
  std::vector<double> du_vals, au_vals, f_vals;
  SpectralField u = a;
  double prev = 0.0;
  for (std::size_t j = 0; j < lab.nodes.size(); ++j) {
    const SpectralField g = theta.values[j] * force;
    u = exponential_step(u, g, lab.nodes[j] - prev, h.alpha);
    prev = lab.nodes[j];
    const SpectralField au = fractional_laplacian(u, h.alpha);
    du_vals.push_back(lab.besov(g - au, h.s, h.p, q));
    au_vals.push_back(lab.besov(au, h.s, h.p, q));
    f_vals.push_back(theta.values[j] * force_norm);
  }
  SampleRatio out;
  out.lhs = lorentz(lab.nodes, du_vals, h.rho, h.r) + lorentz(lab.nodes, au_vals, h.rho, h.r);
  out.rhs = lab.besov(a, h.s0, h.p0, h.r) + lorentz(lab.nodes, f_vals, h.rho, h.r);
  return out;
}

SampleRatio sample_duhamel(const Lab& lab, Rng& rng) {
  const auto& h = lab.h;
  const SpectralField force = lab.vector_field(rng);
  const TimeSamples theta = random_steps(lab.nodes, rng);
  const double force_norm = lab.besov(force, h.s_tilde, h.p, kInf);
  std::vector<double> u_vals, f_vals;
  SpectralField u(lab.grid, lab.grid.dim());
  double prev = 0.0;
  for (std::size_t j = 0; j < lab.nodes.size(); ++j) {
    u = exponential_step(u, theta.values[j] * force, lab.nodes[j] - prev, h.alpha);
    prev = lab.nodes[j];
    u_vals.push_back(lab.besov(u, h.s + 2.0 * h.alpha, h.p, 1.0));
    f_vals.push_back(theta.values[j] * force_norm);
  }
  SampleRatio out;
  out.lhs = lorentz(lab.nodes, u_vals, h.rho, h.r);
  out.rhs = lorentz(lab.nodes, f_vals, h.rho_tilde, h.r);
  return out;
}

std::vector<double> scaled(const TimeSamples& theta, double exponent, double factor) {
  std::vector<double> out;
  for (double v : theta.values) out.push_back(std::pow(v, exponent) * factor);
  return out;
}

SampleRatio sample_bilin(const Lab& lab, Rng& rng, bool m_one) {
  const auto& h = lab.h;
  const double sr = m_one ? 1.0 : kInf;  // summation index of the right-hand norms
  const SpectralField fu = lab.vector_field(rng);
  const SpectralField fv = lab.vector_field(rng);
  const TimeSamples tu = random_steps(lab.nodes, rng);
  const TimeSamples tv = random_steps(lab.nodes, rng);
  const SpectralField x = convective_term(fu, fv, lab.power(h.m));
  const double xn = lab.besov(x, h.s_tilde, h.p, kInf);
  std::vector<double> lhs_vals;
  for (std::size_t j = 0; j < lab.nodes.size(); ++j)
    lhs_vals.push_back(std::pow(tu.values[j], h.m) * tv.values[j] * xn);
  const double un = lab.besov(fu, h.s + 2.0 * h.alpha, h.p, sr);
  const double vn = lab.besov(fv, h.s + 2.0 * h.alpha, h.p, sr);
  SampleRatio out;
  out.lhs = lorentz(lab.nodes, lhs_vals, h.rho_tilde, h.r);
  out.rhs = std::pow(lorentz(lab.nodes, scaled(tu, 1.0, un), h.rho, h.r), h.m) *
            lorentz(lab.nodes, scaled(tv, 1.0, vn), h.rho, h.r);
  return out;
}

SampleRatio sample_bilin_diff(const Lab& lab, Rng& rng) {
  const auto& h = lab.h;
  const double reg = h.s + 2.0 * h.alpha;
  const SpectralField f1 = lab.vector_field(rng);
  const SpectralField w = lab.vector_field(rng);
  const double eps = std::exp(std::log(1e-2) * std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  const SpectralField f2 = f1 + eps * w;
  const SpectralField fv = lab.vector_field(rng);
  const TimeSamples t1 = random_steps(lab.nodes, rng);
  const TimeSamples t2 = random_steps(lab.nodes, rng, 0.1);
  const TimeSamples tv = random_steps(lab.nodes, rng);
  const PowerLaw pl = lab.power(h.m);
  const auto b1 = lab.blocks(f1), b2 = lab.blocks(f2);
  const auto x1 = lab.blocks(convective_term(f1, fv, pl));
  const auto x2 = lab.blocks(convective_term(f2, fv, pl));
  const std::array<const BlockDecomposition*, 2> us{&b1, &b2};
  const std::array<const BlockDecomposition*, 2> xs{&x1, &x2};
  const double n1 = b1.besov({reg, h.p, 1.0}), n2 = b2.besov({reg, h.p, 1.0});
  const double nv = lab.besov(fv, reg, h.p, 1.0);

  std::vector<double> lhs_vals, diff_vals;
  for (std::size_t j = 0; j < lab.nodes.size(); ++j) {
    // u2 follows u1 in time up to a small multiplicative jitter.
    const double c1 = t1.values[j];
    const double c2 = t1.values[j] * t2.values[j];
    const std::array<double, 2> xc{tv.values[j] * std::pow(c1, h.m), -tv.values[j] * std::pow(c2, h.m)};
    lhs_vals.push_back(combination_besov(xs, xc, {h.s_tilde, h.p, kInf}));
    const std::array<double, 2> uc{c1, -c2};
    diff_vals.push_back(combination_besov(us, uc, {reg, h.p, 1.0}));
  }
  std::vector<double> u1_vals, u2_vals;
  for (std::size_t j = 0; j < lab.nodes.size(); ++j) {
    u1_vals.push_back(t1.values[j] * n1);
    u2_vals.push_back(t1.values[j] * t2.values[j] * n2);
  }
  SampleRatio out;
  out.lhs = lorentz(lab.nodes, lhs_vals, h.rho_tilde, h.r);
  out.rhs = (std::pow(lorentz(lab.nodes, u1_vals, h.rho, h.r), h.m - 1.0) +
             std::pow(lorentz(lab.nodes, u2_vals, h.rho, h.r), h.m - 1.0)) *
            lorentz(lab.nodes, diff_vals, h.rho, h.r) *
            lorentz(lab.nodes, scaled(tv, 1.0, nv), h.rho, h.r);
  return out;
}

SampleRatio run_sample(InequalityId id, const Lab& lab, Rng& rng) {
  switch (id) {
    case InequalityId::Prod1: return sample_prod(lab, rng, true);
    case InequalityId::Prod2: return sample_prod(lab, rng, false);
    case InequalityId::PowSmall: return sample_pow_small(lab, rng);
    case InequalityId::Pow: return sample_pow(lab, rng);
    case InequalityId::Diff: return sample_diff(lab, rng);
    case InequalityId::Semi: return sample_semi(lab, rng);
    case InequalityId::MaxReg: return sample_maxreg(lab, rng);
    case InequalityId::Duhamel: return sample_duhamel(lab, rng);
    case InequalityId::BilinM1: return sample_bilin(lab, rng, true);
    case InequalityId::Bilin: return sample_bilin(lab, rng, false);
    case InequalityId::BilinDiff: return sample_bilin_diff(lab, rng);
  }
  throw ParameterError("unknown inequality id");
}

std::vector<std::pair<std::string, double>> report_params(InequalityId id, const HypothesisSet& h) {
  std::vector<std::pair<std::string, double>> ps{
      {"m", h.m}, {"n", static_cast<double>(h.n)}, {"p", h.p}, {"alpha", h.alpha}, {"rho", h.rho},
      {"r", h.r}};
  switch (id) {
    case InequalityId::Prod1:
    case InequalityId::Prod2:
      ps.emplace_back("s", h.n / (2.0 * h.p));
      ps.emplace_back("p1", 2.0 * h.p);
      break;
    case InequalityId::PowSmall:
      ps.emplace_back("m_small", small_power(h));
      ps.emplace_back("s", 0.5 * small_power(h));
      break;
    case InequalityId::Pow:
      ps.emplace_back("s", 0.5 * std::min(h.m, h.n / h.p));
      ps.emplace_back("r_used", pow_r(h));
      break;
    case InequalityId::Diff:
      ps.emplace_back("s", diff_s(h));
      ps.emplace_back("r0", h.m < 2.0 ? 1.0 : h.r);
      break;
    default:
      ps.emplace_back("s", h.s);
      ps.emplace_back("s_tilde", h.s_tilde);
      ps.emplace_back("rho_tilde", h.rho_tilde);
      ps.emplace_back("s0", h.s0);
      ps.emplace_back("p0", h.p0);
      break;
  }
  return ps;
}

}  // namespace

const char* inequality_name(InequalityId id) {
  for (const auto& n : kNames)
    if (n.id == id) return n.name;
  return "?";
}

const char* inequality_flag(InequalityId id) {
  for (const auto& n : kNames)
    if (n.id == id) return n.flag;
  return "?";
}

std::optional<InequalityId> parse_inequality(std::string_view flag) {
  for (const auto& n : kNames)
    if (flag == n.flag) return n.id;
  return std::nullopt;
}

std::vector<std::string> side_condition_violations(InequalityId id, const HypothesisSet& h) {
  std::vector<std::string> v;
  switch (id) {
    case InequalityId::Prod1:
    case InequalityId::Prod2:
    case InequalityId::Pow:
    case InequalityId::Semi:
    case InequalityId::Duhamel:
      break;
    case InequalityId::MaxReg:
      if (!(h.p0 > 1.0)) v.push_back("p0 > 1 violated (p0 = " + fmt(h.p0) + ")");
      break;
    case InequalityId::PowSmall: {
      const double mp = small_power(h);
      if (h.p < 1.0 / mp) v.push_back("1/m <= p violated (" + fmt(1.0 / mp) + " > " + fmt(h.p) + ")");
      if (h.r < 1.0 / mp) v.push_back("1/m <= r violated (" + fmt(1.0 / mp) + " > " + fmt(h.r) + ")");
      break;
    }
    case InequalityId::Diff:
      if (!(h.m > 1.0)) {
        v.push_back("m > 1 violated (m = " + fmt(h.m) + ")");
      } else if (h.m < 2.0) {
        if (h.r < 1.0 / (h.m - 1.0))
          v.push_back("1/(m-1) <= r violated (" + fmt(1.0 / (h.m - 1.0)) + " > " + fmt(h.r) + ")");
      } else if (h.r > std::min(2.0, h.p)) {
        v.push_back("r <= min{2, p} violated (" + fmt(h.r) + " > " + fmt(std::min(2.0, h.p)) + ")");
      }
      break;
    case InequalityId::BilinM1:
      if (h.label != HypothesisLabel::H0)
        v.push_back(std::string("needs hypothesis H0, got ") + label_name(h.label));
      break;
    case InequalityId::Bilin:
    case InequalityId::BilinDiff:
      if (h.label == HypothesisLabel::H0) v.push_back("needs hypothesis H1 or H2, got H0");
      break;
  }
  return v;
}

InequalityReport estimate_constant(InequalityId id, const HypothesisSet& h, int samples,
                                   const LabConfig& cfg) {
  if (samples < 10) throw ConfigurationError("at least 10 samples are required");
  if (auto v = side_condition_violations(id, h); !v.empty())
    throw ValidationError(std::string(inequality_name(id)) + " side conditions fail", v);

  const Lab lab(h, cfg);
  std::vector<SampleRatio> results(static_cast<std::size_t>(samples));
  parallel_for(results.size(), [&](std::size_t i) {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(id) + 1, i);
    results[i] = run_sample(id, lab, rng);
  });

  InequalityReport rep;
  rep.id = id;
  rep.label = label_name(h.label);
  rep.params = report_params(id, h);
  rep.samples = samples;
  rep.seed = cfg.seed;
  std::vector<double> ratios;
  for (const auto& r : results) {
    if (!std::isfinite(r.lhs) || !std::isfinite(r.rhs))
      throw EvaluationError(std::string(inequality_name(id)) + " produced a non-finite sample");
    if (r.rhs == 0.0) {
      ++rep.skipped;
      continue;
    }
    ratios.push_back(r.lhs / r.rhs);
  }
  rep.per_sample = std::move(results);
  if (!ratios.empty()) {
    rep.max_ratio = *std::max_element(ratios.begin(), ratios.end());
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    rep.median_ratio = ratios.size() % 2 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
  }
  return rep;
}

LemmaReport lemma_ab_suite(long samples, std::uint64_t seed) {
  static constexpr std::array<double, 7> kExponents = {0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
  constexpr long kChunk = 1 << 14;
  const long chunks = (samples + kChunk - 1) / kChunk;
  std::vector<long> violations(static_cast<std::size_t>(chunks), 0);
  std::vector<double> max_ratio(static_cast<std::size_t>(chunks), 0.0);

  parallel_for(static_cast<std::size_t>(chunks), [&](std::size_t c) {
    Rng rng = make_rng(seed, 0, c);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(kExponents.size()) - 1);
    const long begin = static_cast<long>(c) * kChunk;
    const long end = std::min(samples, begin + kChunk);
    auto ball = [&](int n, double radius, std::array<double, 3>& out) {
      double norm = 0.0;
      for (int i = 0; i < n; ++i) {
        out[i] = gauss(rng);
        norm += out[i] * out[i];
      }
      norm = std::sqrt(norm);
      const double rad = radius * std::pow(unit(rng), 1.0 / n);
      for (int i = 0; i < n; ++i) out[i] = norm > 0.0 ? out[i] / norm * rad : 0.0;
    };
    for (long i = begin; i < end; ++i) {
      const int n = (i % 2 == 0) ? 2 : 3;
      const double m = kExponents[pick(rng)];
      std::array<double, 3> a{}, b{};
      ball(n, 10.0, a);
      // Half the pairs are near-coincident, where the bounds are tightest.
      if (unit(rng) < 0.5) {
        std::array<double, 3> d{};
        ball(n, std::pow(10.0, -6.0 * unit(rng)), d);
        double nb = 0.0;
        for (int k = 0; k < n; ++k) {
          b[k] = a[k] + d[k];
          nb += b[k] * b[k];
        }
        if (nb > 100.0)
          for (int k = 0; k < n; ++k) b[k] *= 10.0 / std::sqrt(nb);
      } else {
        ball(n, 10.0, b);
      }
      const auto res = pointwise_difference_bound(std::span<const double>(a.data(), n),
                                                  std::span<const double>(b.data(), n), m);
      if (!res.ok) ++violations[c];
      if (res.rhs > 0.0) max_ratio[c] = std::max(max_ratio[c], res.lhs / res.rhs);
    }
  });

  LemmaReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (std::size_t c = 0; c < violations.size(); ++c) {
    rep.violations += violations[c];
    rep.max_ratio = std::max(rep.max_ratio, max_ratio[c]);
  }
  return rep;
}

}  // namespace gns
