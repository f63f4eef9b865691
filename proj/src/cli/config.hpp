#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "gns/solver.hpp"

namespace gns::cli {

/// Everything a solve run needs, parsed from one JSON file.
struct RunConfig {
  std::string name;
  SolverConfig solver;
  SpectralField initial = SpectralField(Grid::make(2, 8), 2);
  Forcing forcing;
  std::filesystem::path output_dir;
  double residual_threshold = 1e-4;
  std::uint64_t seed = 1;
  bool write_fields = true;
  bool uniqueness_check = false;
  /// Rescale the data so that K0 equals this fraction of eta.
  std::optional<double> target_eta_fraction;
};

/// Relative paths resolve against base_dir. Throws ConfigurationError, IoError or
/// ValidationError (hypotheses).
RunConfig parse_run_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_run_config(const std::filesystem::path& file);

/// Accepts a number or the strings "inf" / "infinity".
double extended_real(const nlohmann::json& j, const std::string& what);
double parse_extended_real(const std::string& text);

}  // namespace gns::cli
