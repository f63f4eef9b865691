#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gns/hypotheses.hpp"

namespace gns {

enum class InequalityId {
  Prod1,      // product estimate with shifted regularity
  Prod2,      // product estimate with a Lebesgue factor
  PowSmall,   // J_m with 0 < m <= 1
  Pow,        // J_m with m >= 1
  Diff,       // difference J_m(f) - J_m(g)
  Semi,       // semigroup in Lorentz-Besov spaces
  MaxReg,     // maximal Lorentz regularity
  Duhamel,    // Duhamel operator gain
  BilinM1,    // u . grad v for m = 1
  Bilin,      // J_m(u) . grad v for m > 1
  BilinDiff,  // (J_m(u1) - J_m(u2)) . grad v
};

inline constexpr std::array<InequalityId, 11> kAllInequalities = {
    InequalityId::Prod1,  InequalityId::Prod2,   InequalityId::PowSmall, InequalityId::Pow,
    InequalityId::Diff,   InequalityId::Semi,    InequalityId::MaxReg,   InequalityId::Duhamel,
    InequalityId::BilinM1, InequalityId::Bilin,  InequalityId::BilinDiff};

/// Report name, e.g. "PROD1".
const char* inequality_name(InequalityId id);
/// Command-line name, e.g. "prod1", "pow-small".
const char* inequality_flag(InequalityId id);
std::optional<InequalityId> parse_inequality(std::string_view flag);

/// Sampling setup shared by all inequality checks.
struct LabConfig {
  int points = 16;
  double band = 3.0;
  double sigma = 1.0;
  int time_nodes = 24;
  /// Horizon in units of the slowest decay time 1 / k0^{2 alpha}.
  double horizon = 40.0;
  int dealias_factor = 2;
  std::uint64_t seed = 1;
};

struct SampleRatio {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct InequalityReport {
  InequalityId id = InequalityId::Prod1;
  std::string label;
  std::vector<std::pair<std::string, double>> params;
  int samples = 0;
  int skipped = 0;
  int violations = 0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  std::uint64_t seed = 0;
  std::vector<SampleRatio> per_sample;
};

/// Empty when the set meets the side conditions of the inequality.
std::vector<std::string> side_condition_violations(InequalityId id, const HypothesisSet& h);

/// Throws ValidationError on violated side conditions and ConfigurationError for
/// fewer than 10 samples. Samples with vanishing right-hand side are skipped.
InequalityReport estimate_constant(InequalityId id, const HypothesisSet& h, int samples,
                                   const LabConfig& cfg);

struct LemmaReport {
  long samples = 0;
  long violations = 0;
  double max_ratio = 0.0;
  std::uint64_t seed = 0;
};

/// Random pairs |a|, |b| <= 10 in dimensions 2 and 3, m from {0.3, 0.5, 1, 1.5, 2, 3, 4},
/// checked against the pointwise difference bound for J_m.
LemmaReport lemma_ab_suite(long samples, std::uint64_t seed);

}  // namespace gns
