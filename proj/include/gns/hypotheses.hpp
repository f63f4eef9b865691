#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gns {

enum class HypothesisLabel { H0, H1, H2 };

const char* label_name(HypothesisLabel label);

struct HypothesisInput {
  double m = 1.0;
  int n = 3;
  double p = 2.0;
  double alpha = 1.0;
  double rho = 4.0;
  double r = 2.0;
  std::optional<double> p0;
};

/// One strict (or closed) scalar condition lower < value < upper with its slack.
struct Condition {
  std::string tag;
  std::string text;
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
  bool holds = true;
  /// min(value - lower, upper - value); negative when violated.
  double margin = 0.0;
};

struct Exponents {
  double s = 0.0;
  double s_tilde = 0.0;
  double rho_tilde = 0.0;
  double s0 = 0.0;
  double p0 = 0.0;
  /// s - n/p - 2 alpha/rho minus s0 - n/p0 - 2 alpha; zero for consistent data.
  double window_equality_defect = 0.0;
  /// Slack of s0 - n/p0 - 2 alpha < s - n/p < s0 - n/p0.
  double window_lower_margin = 0.0;
  double window_upper_margin = 0.0;
};

struct HypothesisSet {
  HypothesisLabel label = HypothesisLabel::H0;
  double m = 1.0;
  int n = 3;
  double p = 2.0;
  double p0 = 2.0;
  double rho = 4.0;
  double r = 2.0;
  double alpha = 1.0;
  double s = 0.0;
  double s_tilde = 0.0;
  double rho_tilde = 0.0;
  double s0 = 0.0;
  std::vector<Condition> conditions;
  Exponents exponents;
};

/// Selects the hypothesis family from m (m = 1, 1 < m < 2, m >= 2), evaluates all of
/// its inequalities and derives the critical exponents. Throws ValidationError listing
/// every violated condition.
HypothesisSet check_hypotheses(const HypothesisInput& in);

/// s, tilde-s, tilde-rho, s0 and p0 for a validated set, with the semigroup window.
/// Throws ConsistencyError when the window fails.
Exponents derive_exponents(const HypothesisSet& h);

/// Solver paths additionally need p >= 2.
void require_solver_compatible(const HypothesisSet& h);

}  // namespace gns
