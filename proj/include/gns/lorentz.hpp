#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gns {

/// Piecewise-constant trajectory: value v_j on (t_{j-1}, t_j] with t_0 = 0.
struct TimeSamples {
  std::vector<double> nodes;
  std::vector<double> values;

  /// Throws ParameterError unless nodes are positive and strictly increasing,
  /// values are finite and nonnegative, and there are at least 2 samples.
  static TimeSamples make(std::vector<double> nodes, std::vector<double> values);

  std::size_t size() const { return nodes.size(); }
  double horizon() const { return nodes.back(); }
  double length(std::size_t j) const { return nodes[j] - (j == 0 ? 0.0 : nodes[j - 1]); }
};

struct LorentzIndex {
  double rho = 2.0;
  double r = 2.0;  // may be +infinity

  static LorentzIndex make(double rho, double r);
};

TimeSamples decreasing_rearrangement(const TimeSamples& ts);

/// ||t^{1/rho} f*(t)||_{L^r(dt/t)} on (0, T], normalised so L^{rho,rho} = L^rho.
double lorentz_norm(const TimeSamples& ts, const LorentzIndex& idx, double horizon);
double lorentz_norm(const TimeSamples& ts, const LorentzIndex& idx);

struct PowerIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = ||f^m||_{L^{rho,r}}, rhs = ||f||_{L^{m rho, m r}}^m.
PowerIdentity power_identity_check(const TimeSamples& ts, double m, const LorentzIndex& idx);

struct HolderProduct {
  double lhs = 0.0;
  double rhs_product = 0.0;
  double ratio = 0.0;  // lhs / rhs_product, 0 when both vanish
};

/// Requires sum 1/rho_i = 1/rho within 1e-12 and every rho_i >= rho > 1.
HolderProduct holder_product_check(const std::vector<TimeSamples>& factors,
                                   const std::vector<double>& rho_i, double rho, double r);

/// Pointwise product on the common refinement of the node sets.
TimeSamples pointwise_product(const std::vector<TimeSamples>& factors);
TimeSamples pointwise_power(const TimeSamples& ts, double m);

/// count nodes log-uniform on (horizon * 1e-6, horizon], last node exactly horizon.
std::vector<double> log_uniform_nodes(double horizon, std::size_t count, double floor_ratio = 1e-6);

/// Two-column CSV "t,value" with a header line.
void write_csv(std::ostream& out, const TimeSamples& ts);
TimeSamples read_csv(std::istream& in);

}  // namespace gns
