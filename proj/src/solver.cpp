#include "gns/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gns/error.hpp"
#include "gns/lorentz.hpp"
#include "gns/parallel.hpp"

namespace gns {

namespace {

bool all_finite(const SpectralField& f) {
  for (const auto& c : f.coefficients())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

// Lorentz norm of node values 1..J on the solver partition.
double lorentz_over_nodes(const std::vector<double>& times, const std::vector<double>& values,
                          double rho, double r) {
  std::vector<double> nodes(times.begin() + 1, times.end());
  std::vector<double> vals(values.begin() + 1, values.end());
  return lorentz_norm(TimeSamples::make(std::move(nodes), std::move(vals)), LorentzIndex::make(rho, r));
}

std::vector<SpectralField> convective_terms(const std::vector<SpectralField>& u, const SolverConfig& cfg) {
  std::vector<SpectralField> out(u.size(), SpectralField(cfg.grid, cfg.grid.dim()));
  parallel_for(u.size(), [&](std::size_t j) { out[j] = convective_term(u[j], u[j], cfg.power); });
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("horizon T must be > 0");
  if (time_nodes < 2) throw ConfigurationError("at least 2 time nodes are required");
  if (!(tolerance > 0.0)) throw ParameterError("Picard tolerance must be > 0");
  if (max_iterations < 1) throw ParameterError("max iterations must be >= 1");
  if (!(node_floor > 0.0 && node_floor < 1.0)) throw ParameterError("node floor must lie in (0, 1)");
  if (grid.dim() != hypothesis.n) throw ConfigurationError("grid dimension differs from hypothesis n");
  if (power.m != hypothesis.m) throw ConfigurationError("power law exponent differs from hypothesis m");
  if (!(power.m >= 1.0)) throw ParameterError("solver needs m >= 1");
  for (double k : constants)
    if (!(k >= 1.0)) throw ParameterError("constants k_i must be >= 1");
  require_solver_compatible(hypothesis);
}

std::vector<double> solver_times(const SolverConfig& cfg) {
  std::vector<double> t{0.0};
  const auto nodes = log_uniform_nodes(cfg.horizon, static_cast<std::size_t>(cfg.time_nodes), cfg.node_floor);
  t.insert(t.end(), nodes.begin(), nodes.end());
  return t;
}

Forcing Forcing::zero(const Grid& grid) { return Forcing{{SpectralField(grid, grid.dim())}}; }

Forcing Forcing::constant(SpectralField f) { return Forcing{{std::move(f)}}; }

bool Forcing::is_zero() const {
  for (const auto& s : samples)
    if (max_coefficient(s) != 0.0) return false;
  return true;
}

ContractionDiagnostics evaluate_gate(double K0, double k2) {
  if (!(k2 >= 1.0)) throw ParameterError("constant k2 must be >= 1");
  if (!(K0 >= 0.0) || !std::isfinite(K0)) throw ParameterError("K0 must be finite and >= 0");
  ContractionDiagnostics d;
  d.K0 = K0;
  d.eta = 1.0 / (16.0 * k2);
  const double disc = 1.0 - 4.0 * k2 * K0;
  if (disc < 0.0) {
    d.gate = false;
    d.gate_reason = "discriminant negative (4 k2 K0 = " + std::to_string(4.0 * k2 * K0) + " > 1)";
    return d;
  }
  d.lambda1 = (1.0 - std::sqrt(disc)) / (2.0 * k2);
  const bool small = K0 <= d.eta;
  const bool contracts = 4.0 * k2 * *d.lambda1 < 1.0;
  d.gate = small && contracts;
  if (!small)
    d.gate_reason = "K0 exceeds eta";
  else if (!contracts)
    d.gate_reason = "4 k2 lambda1 >= 1";
  else
    d.gate_reason = "pass";
  return d;
}

ContractionDiagnostics smallness_gate(const SpectralField& a, const Forcing& f,
                                      const SolverConfig& cfg, const Constants& k) {
  if (!(k.k0 >= 1.0) || !(k.k1 >= 1.0) || !(k.k2 >= 1.0))
    throw ParameterError("constants k_i must be >= 1");
  const auto& h = cfg.hypothesis;
  const DyadicCutoff cutoff = DyadicCutoff::build(cfg.grid);
  const double a_norm = besov_norm(a, {h.s0, h.p0, h.r}, cutoff);
  double f_norm = 0.0;
  if (!f.is_zero()) {
    const auto times = solver_times(cfg);
    std::vector<double> values(times.size(), 0.0);
    // The integrator holds f(t_{j-1}) over (t_{j-1}, t_j].
    for (std::size_t j = 1; j < times.size(); ++j)
      values[j] = besov_norm(f.at(j - 1), {h.s_tilde, h.p, kInf}, cutoff);
    f_norm = lorentz_over_nodes(times, values, h.rho_tilde, h.r);
  }
  ContractionDiagnostics d = evaluate_gate(k.k0 * a_norm + k.k1 * f_norm, k.k2);
  d.a_norm = a_norm;
  d.f_norm = f_norm;
  d.constants = k;
  return d;
}

Constants resolve_constants(const SolverConfig& cfg) {
  Constants k;
  if (cfg.constants_mode == ConstantsMode::Supplied) {
    k.k0 = cfg.constants[0];
    k.k1 = cfg.constants[1];
    k.k2 = cfg.constants[2];
    if (!(k.k0 >= 1.0) || !(k.k1 >= 1.0) || !(k.k2 >= 1.0))
      throw ParameterError("constants k_i must be >= 1");
    return k;
  }
  LabConfig lab = cfg.lab;
  lab.time_nodes = cfg.time_nodes;
  lab.horizon = cfg.horizon * std::pow(cfg.grid.fundamental(), 2.0 * cfg.hypothesis.alpha);
  const auto& h = cfg.hypothesis;
  const InequalityId bilinear = h.label == HypothesisLabel::H0 ? InequalityId::BilinM1 : InequalityId::Bilin;
  k.k0 = std::max(1.0, estimate_constant(InequalityId::Semi, h, cfg.estimate_samples, lab).max_ratio);
  k.k1 = std::max(1.0, estimate_constant(InequalityId::Duhamel, h, cfg.estimate_samples, lab).max_ratio);
  k.k2 = std::max(1.0, estimate_constant(bilinear, h, cfg.estimate_samples, lab).max_ratio);
  k.provenance = std::string("estimated: SEMI, DUHAMEL, ") + inequality_name(bilinear) + ", " +
                 std::to_string(cfg.estimate_samples) + " samples, seed " + std::to_string(lab.seed);
  return k;
}

Trajectory linear_part(const SpectralField& a, const SolverConfig& cfg) {
  if (!(a.grid() == cfg.grid) || !a.is_vector()) throw ShapeError("initial field has the wrong shape");
  Trajectory out;
  out.times = solver_times(cfg);
  out.velocity.assign(out.times.size(), SpectralField(cfg.grid, cfg.grid.dim()));
  parallel_for(out.times.size(), [&](std::size_t j) {
    out.velocity[j] = semigroup_apply(a, out.times[j], cfg.hypothesis.alpha);
  });
  return out;
}

Trajectory duhamel_apply(const std::vector<SpectralField>& g, const SolverConfig& cfg) {
  Trajectory out;
  out.times = solver_times(cfg);
  if (g.size() != out.times.size())
    throw ShapeError("forcing has " + std::to_string(g.size()) + " samples for " +
                     std::to_string(out.times.size()) + " time nodes");
  out.velocity.reserve(g.size());
  out.velocity.emplace_back(cfg.grid, cfg.grid.dim());
  for (std::size_t j = 1; j < g.size(); ++j) {
    const double h = out.times[j] - out.times[j - 1];
    out.velocity.push_back(exponential_step(out.velocity[j - 1], g[j - 1], h, cfg.hypothesis.alpha));
  }
  return out;
}

Trajectory phi_map(const Trajectory& u, const SpectralField& a, const Forcing& f,
                   const SolverConfig& cfg) {
  const auto times = solver_times(cfg);
  if (u.velocity.size() != times.size()) throw ShapeError("trajectory does not match the time nodes");
  const auto conv = convective_terms(u.velocity, cfg);
  std::vector<SpectralField> g(times.size(), SpectralField(cfg.grid, cfg.grid.dim()));
  parallel_for(times.size(), [&](std::size_t j) { g[j] = leray_project(f.at(j) - conv[j]); });
  Trajectory out = linear_part(a, cfg);
  const Trajectory s = duhamel_apply(g, cfg);
  for (std::size_t j = 0; j < times.size(); ++j) out.velocity[j] += s.velocity[j];
  return out;
}

double trajectory_norm(const std::vector<SpectralField>& u, const std::vector<double>& times,
                       const SolverConfig& cfg, const BesovIndex& idx) {
  if (u.size() != times.size()) throw ShapeError("trajectory does not match the time nodes");
  const DyadicCutoff cutoff = DyadicCutoff::build(cfg.grid);
  std::vector<double> values(u.size(), 0.0);
  parallel_for(u.size() - 1, [&](std::size_t i) { values[i + 1] = besov_norm(u[i + 1], idx, cutoff); });
  return lorentz_over_nodes(times, values, cfg.hypothesis.rho, cfg.hypothesis.r);
}

SolveResult picard_solve(const SpectralField& a_in, const Forcing& f, const SolverConfig& cfg,
                         const Constants& k, PicardStart start) {
  cfg.validate();
  const auto& h = cfg.hypothesis;
  if (!(a_in.grid() == cfg.grid) || !a_in.is_vector()) throw ShapeError("initial field has the wrong shape");
  SpectralField a = a_in;
  const double div = max_coefficient(divergence(a));
  if (div > 1e-10 * std::max(1.0, max_coefficient(a))) {
    if (!cfg.project_initial)
      throw ValidationError("initial field is not divergence-free",
                            {"max |div a| coefficient " + std::to_string(div)});
    a = leray_project(a);
  }
  for (std::size_t j = 0; j < f.samples.size(); ++j)
    if (!all_finite(f.samples[j])) throw NumericalBlowupError("forcing is not finite", j);

  SolveResult res;
  res.diagnostics = smallness_gate(a, f, cfg, k);
  if (!res.diagnostics.gate && cfg.gate_policy == GatePolicy::Abort)
    throw GateError("smallness gate failed: " + res.diagnostics.gate_reason);

  const BesovIndex reg{h.s + 2.0 * h.alpha, h.p, 1.0};
  std::vector<SpectralField> pf;
  const auto times = solver_times(cfg);
  for (std::size_t j = 0; j < times.size(); ++j) pf.push_back(leray_project(f.at(j)));
  Trajectory u = linear_part(a, cfg);
  const Trajectory s = duhamel_apply(pf, cfg);
  for (std::size_t j = 0; j < u.velocity.size(); ++j) {
    u.velocity[j] += s.velocity[j];
    if (start == PicardStart::Halved) u.velocity[j] *= 0.5;
  }

  auto& d = res.diagnostics;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    Trajectory next = phi_map(u, a, f, cfg);
    for (std::size_t j = 0; j < next.velocity.size(); ++j)
      if (!all_finite(next.velocity[j]))
        throw NumericalBlowupError("non-finite velocity at node " + std::to_string(j), j);
    std::vector<SpectralField> diff;
    diff.reserve(next.velocity.size());
    for (std::size_t j = 0; j < next.velocity.size(); ++j) diff.push_back(next.velocity[j] - u.velocity[j]);
    const double dk = trajectory_norm(diff, next.times, cfg, reg);
    if (!std::isfinite(dk)) throw NumericalBlowupError("non-finite update norm", 0);
    if (!d.updates.empty()) d.ratios.push_back(d.updates.back() > 0.0 ? dk / d.updates.back() : 0.0);
    d.updates.push_back(dk);
    d.iterations = iter + 1;
    u = std::move(next);
    if (dk < cfg.tolerance) {
      d.solution_norm = trajectory_norm(u.velocity, u.times, cfg, reg);
      res.trajectory = std::move(u);
      return res;
    }
  }
  throw DivergenceError("Picard iteration did not converge in " + std::to_string(cfg.max_iterations) +
                            " iterations",
                        d.updates);
}

void pressure_recover(Trajectory& u, const Forcing& f, const SolverConfig& cfg) {
  const auto conv = convective_terms(u.velocity, cfg);
  u.pressure_gradient.assign(u.velocity.size(), SpectralField(cfg.grid, cfg.grid.dim()));
  parallel_for(u.velocity.size(), [&](std::size_t j) {
    const SpectralField w = f.at(j) - conv[j];
    u.pressure_gradient[j] = w - leray_project(w);
  });
}

void record_norms(Trajectory& u, const SolverConfig& cfg) {
  const auto& h = cfg.hypothesis;
  const DyadicCutoff cutoff = DyadicCutoff::build(cfg.grid);
  u.norms.assign(u.velocity.size(), NormRecord{});
  parallel_for(u.velocity.size(), [&](std::size_t j) {
    const BlockDecomposition blocks(u.velocity[j], cutoff);
    u.norms[j].regular = blocks.besov({h.s + 2.0 * h.alpha, h.p, 1.0});
    u.norms[j].tilde_regular = blocks.besov({h.s_tilde + 2.0 * h.alpha, h.p, kInf});
    u.norms[j].tilde = blocks.besov({h.s_tilde, h.p, kInf});
  });
}

Residual residual_check(const Trajectory& u, const SpectralField& a, const Forcing& f,
                        const SolverConfig& cfg) {
  if (u.velocity.size() < 3) throw ConfigurationError("residual needs at least 3 time nodes");
  if (u.pressure_gradient.size() != u.velocity.size())
    throw ConfigurationError("pressure gradients have not been recovered");
  const auto& h = cfg.hypothesis;
  const Grid& g = cfg.grid;
  const DyadicCutoff cutoff = DyadicCutoff::build(g);
  const BesovIndex tilde{h.s_tilde, h.p, kInf};
  const auto conv = convective_terms(u.velocity, cfg);

  std::vector<double> lambda(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) lambda[k] = std::pow(g.mode(k).magnitude_sq, h.alpha);

  std::vector<double> node_res(u.velocity.size(), 0.0);
  parallel_for(u.velocity.size() - 1, [&](std::size_t i) {
    const std::size_t j = i + 1;
    const double step = u.times[j] - u.times[j - 1];
    SpectralField r = conv[j] + u.pressure_gradient[j] - f.at(j);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double decay = std::exp(-step * lambda[k]);
      const double phi = lambda[k] > 0.0 ? -std::expm1(-step * lambda[k]) / lambda[k] : step;
      for (int c = 0; c < g.dim(); ++c)
        r(c, k) += (u.velocity[j](c, k) - decay * u.velocity[j - 1](c, k)) / phi;
    }
    node_res[j] = besov_norm(r, tilde, cutoff);
  });

  Residual out;
  for (std::size_t j = 1; j < node_res.size(); ++j)
    if (node_res[j] > out.absolute) {
      out.absolute = node_res[j];
      out.worst_node = j;
    }
  out.scale = besov_norm(a, {h.s_tilde + 2.0 * h.alpha, h.p, kInf}, cutoff);
  double fmax = 0.0;
  for (const auto& s : f.samples) fmax = std::max(fmax, besov_norm(s, tilde, cutoff));
  out.scale += fmax;
  out.relative = out.scale > 0.0 ? out.absolute / out.scale : out.absolute;
  return out;
}

double max_divergence(const Trajectory& u) {
  double worst = 0.0;
  for (const auto& v : u.velocity) {
    const PhysicalField d = to_physical(divergence(v));
    for (double x : d.values) worst = std::max(worst, std::abs(x));
  }
  return worst;
}

}  // namespace gns
