#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gns/besov.hpp"
#include "gns/estimates.hpp"
#include "gns/hypotheses.hpp"
#include "gns/nonlinearity.hpp"
#include "gns/spectral.hpp"

namespace gns {

enum class GatePolicy { Warn, Abort };
enum class ConstantsMode { Supplied, Estimated };

struct SolverConfig {
  HypothesisSet hypothesis;
  Grid grid = Grid::make(2, 32);
  double horizon = 1.0;
  int time_nodes = 64;
  double node_floor = 1e-6;
  double tolerance = 1e-10;
  int max_iterations = 30;
  ConstantsMode constants_mode = ConstantsMode::Supplied;
  std::array<double, 3> constants{1.0, 1.0, 1.0};
  int estimate_samples = 20;
  LabConfig lab;
  PowerLaw power;
  GatePolicy gate_policy = GatePolicy::Warn;
  /// Project a non-solenoidal initial field instead of rejecting it.
  bool project_initial = false;

  /// Throws ParameterError / ConfigurationError on invalid settings.
  void validate() const;
};

/// t_0 = 0 followed by time_nodes log-uniform nodes on (T * node_floor, T].
std::vector<double> solver_times(const SolverConfig& cfg);

/// Forcing sampled on the solver times, or a single field held constant.
struct Forcing {
  std::vector<SpectralField> samples;

  static Forcing zero(const Grid& grid);
  static Forcing constant(SpectralField f);
  const SpectralField& at(std::size_t j) const { return samples.size() == 1 ? samples[0] : samples.at(j); }
  bool is_zero() const;
};

struct NormRecord {
  double regular = 0.0;        // B^{s+2alpha}_{p,1}
  double tilde_regular = 0.0;  // B^{tilde-s+2alpha}_{p,inf}
  double tilde = 0.0;          // B^{tilde-s}_{p,inf}
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> velocity;
  std::vector<SpectralField> pressure_gradient;
  std::vector<NormRecord> norms;
};

struct Constants {
  double k0 = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  std::string provenance = "supplied";
};

struct ContractionDiagnostics {
  double K0 = 0.0;
  double eta = 0.0;
  std::optional<double> lambda1;
  bool gate = false;
  std::string gate_reason;
  Constants constants;
  std::vector<double> updates;  // d_k
  std::vector<double> ratios;   // d_{k+1} / d_k
  int iterations = 0;
  double solution_norm = 0.0;   // ||u||_{L^{rho,r}_T(B^{s+2alpha}_{p,1})}
  double a_norm = 0.0;          // ||a||_{B^{s0}_{p0,r}}
  double f_norm = 0.0;          // ||f||_{L^{tilde-rho,r}_T(B^{tilde-s}_{p,inf})}
};

/// K0 = 0.01, k2 = 1 gives lambda1 = (1 - sqrt(0.96)) / 2. Fails when 4 k2 K0 > 1.
/// Passes iff K0 <= eta = 1/(16 k2) and 4 k2 lambda1 < 1. Throws ParameterError when k2 < 1.
ContractionDiagnostics evaluate_gate(double K0, double k2);

/// Throws ParameterError when any k_i < 1.
ContractionDiagnostics smallness_gate(const SpectralField& a, const Forcing& f,
                                      const SolverConfig& cfg, const Constants& k);

/// Supplied constants, or the empirical maxima of the semigroup, Duhamel and bilinear
/// checks clamped below by 1.
Constants resolve_constants(const SolverConfig& cfg);

Trajectory linear_part(const SpectralField& a, const SolverConfig& cfg);
/// S g with g frozen at its left-endpoint value on each step; g[j] is g(t_j).
Trajectory duhamel_apply(const std::vector<SpectralField>& g, const SolverConfig& cfg);
Trajectory phi_map(const Trajectory& u, const SpectralField& a, const Forcing& f,
                   const SolverConfig& cfg);

/// ||u||_{L^{rho,r}_T(B^{idx})} over the nodes after t_0.
double trajectory_norm(const std::vector<SpectralField>& u, const std::vector<double>& times,
                       const SolverConfig& cfg, const BesovIndex& idx);

/// Linear starts at a_L + S(Pf); Halved starts at half of it, inside the same ball. Neither 0
/// (Phi(0) is the linear start) nor the negative (the convection is even in u) gives a distinct path.
enum class PicardStart { Linear, Halved };

struct SolveResult {
  Trajectory trajectory;
  ContractionDiagnostics diagnostics;
};

/// Iterates u_{k+1} = Phi(u_k) until the update norm falls below the tolerance.
/// Throws GateError when the gate fails under the abort policy, DivergenceError after
/// max_iterations, NumericalBlowupError on non-finite values.
SolveResult picard_solve(const SpectralField& a, const Forcing& f, const SolverConfig& cfg,
                         const Constants& k, PicardStart start = PicardStart::Linear);

/// Fills grad pi(t_j) = (I - P)(f(t_j) - J_m(u) . grad u).
void pressure_recover(Trajectory& u, const Forcing& f, const SolverConfig& cfg);

/// Fills the per-node norm records.
void record_norms(Trajectory& u, const SolverConfig& cfg);

struct Residual {
  double relative = 0.0;
  double absolute = 0.0;
  double scale = 0.0;
  std::size_t worst_node = 0;
};

/// Max over nodes of the B^{tilde-s}_{p,inf} norm of
/// Q_j u + J_m(u_j) . grad u_j + grad pi_j - f_j, where Q_j is the integrating-factor
/// quotient A (u_j - e^{-h A} u_{j-1}) / (1 - e^{-h A}) standing for u' + A u on the step.
/// Relative to ||a||_{B^{tilde-s+2alpha}_{p,inf}} + max_j ||f_j||_{B^{tilde-s}_{p,inf}}, absolute
/// when that scale vanishes. Throws ConfigurationError with fewer than 3 nodes.
Residual residual_check(const Trajectory& u, const SpectralField& a, const Forcing& f,
                        const SolverConfig& cfg);

/// Max over nodes and components of |Re div u| in physical space.
double max_divergence(const Trajectory& u);

}  // namespace gns
