#include "cli/config.hpp"

#include <cmath>
#include <fstream>

#include "gns/error.hpp"
#include "gns/field_io.hpp"
#include "gns/named_fields.hpp"
#include "gns/random_fields.hpp"

namespace gns::cli {

using nlohmann::json;

namespace {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("config key '") + key + "': " + e.what());
  }
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigurationError(std::string("missing config key '") + key + "'");
  return j.at(key);
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  if (!std::filesystem::exists(path)) throw IoError("input file not found: " + path.string());
  return path;
}

SpectralField build_field(const json& spec, const Grid& grid, std::uint64_t seed, std::uint64_t stream,
                          const std::filesystem::path& base) {
  const std::string type = get_or<std::string>(spec, "type", "zero");
  const double amplitude = get_or<double>(spec, "amplitude", 1.0);
  if (type == "zero") return SpectralField(grid, grid.dim());
  if (type == "taylor-green") return taylor_green(grid, amplitude);
  if (type == "mode") {
    const auto z = get_or<std::vector<int>>(spec, "k", {});
    if (z.size() != static_cast<std::size_t>(grid.dim()))
      throw ConfigurationError("mode wavevector needs one entry per axis");
    std::array<int, 3> zz{};
    for (std::size_t d = 0; d < z.size(); ++d) zz[d] = z[d];
    return single_mode(grid, zz, amplitude);
  }
  if (type == "random") {
    FieldSpec fs;
    fs.components = grid.dim();
    fs.solenoidal = true;
    fs.band = get_or<double>(spec, "band", 3.0);
    fs.sigma = get_or<double>(spec, "sigma", 1.0);
    fs.l2_norm = get_or<double>(spec, "l2_norm", 1.0);
    Rng rng = make_rng(get_or<std::uint64_t>(spec, "seed", seed), stream, 0);
    return random_field(grid, fs, rng);
  }
  if (type == "file") {
    SpectralField f = load_field(resolve(base, get_or<std::string>(spec, "path", "")));
    if (!(f.grid() == grid)) throw ConfigurationError("field file grid differs from the config grid");
    if (amplitude != 1.0) f *= amplitude;
    return f;
  }
  throw ConfigurationError("unknown field type '" + type + "'");
}

}  // namespace

double parse_extended_real(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return INFINITY;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw ConfigurationError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigurationError("not a number: '" + text + "'");
  return v;
}

double extended_real(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_extended_real(j.get<std::string>());
  throw ConfigurationError(what + " must be a number or \"inf\"");
}

RunConfig parse_run_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigurationError("config must be a JSON object");
  RunConfig rc;
  rc.name = get_or<std::string>(j, "name", "run");
  rc.seed = get_or<std::uint64_t>(j, "seed", 1);

  const json& hy = require(j, "hypothesis");
  HypothesisInput in;
  in.m = get_or<double>(hy, "m", 1.0);
  in.n = get_or<int>(hy, "n", 2);
  in.p = get_or<double>(hy, "p", 2.0);
  in.alpha = get_or<double>(hy, "alpha", 1.0);
  in.rho = get_or<double>(hy, "rho", 4.0);
  in.r = hy.contains("r") ? extended_real(hy.at("r"), "hypothesis.r") : 2.0;
  if (hy.contains("p0")) in.p0 = get_or<double>(hy, "p0", 0.0);

  SolverConfig& sc = rc.solver;
  sc.hypothesis = check_hypotheses(in);
  const json grid = j.value("grid", json::object());
  sc.grid = Grid::make(in.n, get_or<int>(grid, "points", 32), get_or<double>(grid, "length", 2.0 * M_PI));

  const json time = j.value("time", json::object());
  sc.horizon = get_or<double>(time, "horizon", 1.0);
  sc.time_nodes = get_or<int>(time, "nodes", 64);
  sc.node_floor = get_or<double>(time, "floor", 1e-6);

  const json picard = j.value("picard", json::object());
  sc.tolerance = get_or<double>(picard, "tolerance", 1e-10);
  sc.max_iterations = get_or<int>(picard, "max_iterations", 30);

  sc.power = PowerLaw::make(in.m, get_or<int>(j, "dealias_factor", 2));

  const json constants = j.value("constants", json::object());
  const std::string mode = get_or<std::string>(constants, "mode", "supplied");
  if (mode == "supplied") {
    sc.constants_mode = ConstantsMode::Supplied;
    const auto k = get_or<std::vector<double>>(constants, "k", {1.0, 1.0, 1.0});
    if (k.size() != 3) throw ConfigurationError("constants.k needs three entries k0, k1, k2");
    sc.constants = {k[0], k[1], k[2]};
  } else if (mode == "estimated") {
    sc.constants_mode = ConstantsMode::Estimated;
    sc.estimate_samples = get_or<int>(constants, "samples", 20);
    sc.lab.points = get_or<int>(constants, "lab_points", 16);
    sc.lab.band = get_or<double>(constants, "band", 3.0);
    sc.lab.sigma = get_or<double>(constants, "sigma", 1.0);
    sc.lab.seed = get_or<std::uint64_t>(constants, "seed", rc.seed);
  } else {
    throw ConfigurationError("constants.mode must be 'supplied' or 'estimated'");
  }

  const std::string gate = get_or<std::string>(j, "gate", "warn");
  if (gate == "warn")
    sc.gate_policy = GatePolicy::Warn;
  else if (gate == "abort")
    sc.gate_policy = GatePolicy::Abort;
  else
    throw ConfigurationError("gate must be 'warn' or 'abort'");
  sc.project_initial = get_or<bool>(j, "project_initial", false);
  sc.validate();

  rc.initial = build_field(j.value("initial", json::object()), sc.grid, rc.seed, 1, base_dir);

  const json forcing = j.value("forcing", json::object());
  const std::string ftype = get_or<std::string>(forcing, "type", "zero");
  if (ftype == "files") {
    const auto paths = get_or<std::vector<std::string>>(forcing, "paths", {});
    if (paths.size() != static_cast<std::size_t>(sc.time_nodes) + 1)
      throw ConfigurationError("forcing files must list one field per time node including t = 0");
    for (const auto& p : paths) {
      SpectralField f = load_field(resolve(base_dir, p));
      if (!(f.grid() == sc.grid)) throw ConfigurationError("forcing file grid differs from the config grid");
      rc.forcing.samples.push_back(std::move(f));
    }
  } else if (ftype == "oscillating") {
    // f(t) = cos(omega t) g with g built from the nested field spec.
    const double omega = get_or<double>(forcing, "omega", 1.0);
    const SpectralField g = build_field(require(forcing, "field"), sc.grid, rc.seed, 2, base_dir);
    for (double t : solver_times(sc)) rc.forcing.samples.push_back(std::cos(omega * t) * g);
  } else {
    rc.forcing = Forcing::constant(build_field(forcing, sc.grid, rc.seed, 2, base_dir));
  }

  const json out = j.value("output", json::object());
  rc.output_dir = get_or<std::string>(out, "directory", "gns_out");
  if (rc.output_dir.is_relative()) rc.output_dir = base_dir / rc.output_dir;
  rc.write_fields = get_or<bool>(out, "write_fields", true);
  rc.residual_threshold = get_or<double>(j, "residual_threshold", 1e-4);
  rc.uniqueness_check = get_or<bool>(j, "uniqueness_check", false);
  if (j.contains("target_eta_fraction")) {
    const double frac = get_or<double>(j, "target_eta_fraction", 0.5);
    if (!(frac > 0.0)) throw ConfigurationError("target_eta_fraction must be > 0");
    rc.target_eta_fraction = frac;
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config " + file.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigurationError("config " + file.string() + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j, file.parent_path());
}

}  // namespace gns::cli
