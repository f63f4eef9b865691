#include "cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cli/config.hpp"
#include "gns/besov.hpp"
#include "gns/error.hpp"
#include "gns/estimates.hpp"
#include "gns/field_io.hpp"
#include "gns/lorentz.hpp"
#include "gns/named_fields.hpp"
#include "gns/report.hpp"
#include "gns/scaling.hpp"
#include "gns/solver.hpp"

namespace gns::cli {

namespace {

struct HypothesisFlags {
  double m = 1.0;
  int n = 3;
  double p = 2.0;
  double alpha = 1.0;
  double rho = 4.0;
  std::string r = "2";
  double p0 = 0.0;
  CLI::Option* p0_opt = nullptr;

  void attach(CLI::App* app, bool required) {
    auto* o1 = app->add_option("--m", m, "power-law exponent m >= 1");
    auto* o2 = app->add_option("--n", n, "space dimension (2 or 3)");
    auto* o3 = app->add_option("--p", p, "spatial integrability p");
    auto* o4 = app->add_option("--alpha", alpha, "fractional order alpha");
    auto* o5 = app->add_option("--rho", rho, "Lorentz time exponent rho");
    if (required)
      for (auto* o : {o1, o2, o3, o4, o5}) o->required();
    app->add_option("--r", r, "summation index r (number or inf)");
    p0_opt = app->add_option("--p0", p0, "initial-data integrability p0 (derived when omitted)");
  }

  HypothesisInput input() const {
    HypothesisInput in;
    in.m = m;
    in.n = n;
    in.p = p;
    in.alpha = alpha;
    in.rho = rho;
    in.r = parse_extended_real(r);
    if (p0_opt != nullptr && p0_opt->count() > 0) in.p0 = p0;
    return in;
  }
};

void print_violations(std::ostream& out, const ValidationError& e) {
  JsonObject o;
  o.add("valid", false).add("error", std::string(e.what())).add("violations", e.violations());
  out << o.str() << "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
  if (!f) throw IoError("write failed for " + path.string());
}

int cmd_hypotheses(const HypothesisFlags& hf, std::ostream& out) {
  try {
    const HypothesisSet h = check_hypotheses(hf.input());
    JsonObject o = hypothesis_json(h);
    JsonObject wrapped;
    wrapped.add("valid", true).add("hypothesis", o);
    out << wrapped.str() << "\n";
    return kOk;
  } catch (const ValidationError& e) {
    print_violations(out, e);
    return kInvalid;
  }
}

struct VerifyFlags {
  std::string ineq;
  long samples = 100;
  std::uint64_t seed = 1;
  std::string out_dir;
  LabConfig lab;
};

int cmd_verify(const HypothesisFlags& hf, const VerifyFlags& vf, std::ostream& out, std::ostream& err) {
  const bool all = vf.ineq == "all";
  const bool lemma = vf.ineq == "lemma-ab";
  std::optional<InequalityId> single;
  if (!all && !lemma) {
    single = parse_inequality(vf.ineq);
    if (!single) {
      err << "unknown inequality id '" << vf.ineq << "'\n";
      return kUsage;
    }
  }
  if (!vf.out_dir.empty()) std::filesystem::create_directories(vf.out_dir);
  auto emit = [&](const std::string& id, const JsonObject& o) {
    out << o.str() << "\n";
    if (!vf.out_dir.empty()) write_text(std::filesystem::path(vf.out_dir) / (id + ".jsonl"), o.str() + "\n");
  };

  bool ok = true;
  if (lemma || all) {
    const LemmaReport rep = lemma_ab_suite(vf.samples, vf.seed);
    emit("lemma-ab", lemma_json(rep));
    ok = ok && rep.violations == 0;
    if (lemma) return ok ? kOk : kInvalid;
  }

  HypothesisSet h;
  try {
    h = check_hypotheses(hf.input());
  } catch (const ValidationError& e) {
    print_violations(out, e);
    return kInvalid;
  }
  LabConfig lab = vf.lab;
  lab.seed = vf.seed;
  const int samples = static_cast<int>(vf.samples);
  std::vector<InequalityId> ids;
  if (single)
    ids.push_back(*single);
  else
    ids.assign(kAllInequalities.begin(), kAllInequalities.end());
  for (InequalityId id : ids) {
    const auto side = side_condition_violations(id, h);
    if (!side.empty()) {
      JsonObject o;
      o.add("ineq_id", inequality_name(id))
          .add("hypothesis_label", label_name(h.label))
          .add("status", "side_conditions_violated")
          .add("violations", side);
      emit(inequality_flag(id), o);
      if (single) return kInvalid;
      continue;
    }
    const InequalityReport rep = estimate_constant(id, h, samples, lab);
    JsonObject o = inequality_json(rep);
    o.add("status", "ok");
    emit(inequality_flag(id), o);
    ok = ok && rep.violations == 0 && std::isfinite(rep.max_ratio);
  }
  return ok ? kOk : kInvalid;
}

struct SolveFlags {
  std::string config;
  std::string gate;
  std::string out_dir;
};

std::string norms_csv(const Trajectory& u) {
  std::ostringstream s;
  s << "t,besov_regular,besov_tilde_regular,besov_tilde\n";
  char buf[128];
  for (std::size_t j = 0; j < u.times.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", u.times[j], u.norms[j].regular,
                  u.norms[j].tilde_regular, u.norms[j].tilde);
    s << buf;
  }
  return s.str();
}

int cmd_solve(const SolveFlags& sf, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  try {
    rc = load_run_config(sf.config);
  } catch (const ValidationError& e) {
    print_violations(out, e);
    return kInvalid;
  }
  if (!sf.gate.empty()) rc.solver.gate_policy = sf.gate == "abort" ? GatePolicy::Abort : GatePolicy::Warn;
  if (!sf.out_dir.empty()) rc.output_dir = sf.out_dir;
  std::filesystem::create_directories(rc.output_dir);
  const auto diag_path = rc.output_dir / "diagnostics.json";

  const Constants k = resolve_constants(rc.solver);
  if (rc.target_eta_fraction) {
    const ContractionDiagnostics g = smallness_gate(rc.initial, rc.forcing, rc.solver, k);
    if (g.K0 > 0.0) {
      const double scale = *rc.target_eta_fraction * g.eta / g.K0;
      rc.initial *= scale;
      for (auto& f : rc.forcing.samples) f *= scale;
    }
  }

  JsonObject report;
  report.add("name", rc.name).add("seed", rc.seed).add("hypothesis", hypothesis_json(rc.solver.hypothesis));
  SolveResult res;
  try {
    res = picard_solve(rc.initial, rc.forcing, rc.solver, k);
  } catch (const GateError& e) {
    const ContractionDiagnostics g = smallness_gate(rc.initial, rc.forcing, rc.solver, k);
    report.add("status", "gate_failed").add("message", std::string(e.what()));
    report.add("diagnostics", diagnostics_json(g));
    report.add("four_k2_K0", 4.0 * g.constants.k2 * g.K0);
    write_text(diag_path, report.str() + "\n");
    out << report.str() << "\n";
    return kGate;
  } catch (const DivergenceError& e) {
    report.add("status", "diverged").add("message", std::string(e.what())).add("d_k", e.updates());
    write_text(diag_path, report.str() + "\n");
    out << report.str() << "\n";
    return kNoConvergence;
  } catch (const NumericalBlowupError& e) {
    report.add("status", "blowup").add("message", std::string(e.what()));
    report.add("node", static_cast<std::uint64_t>(e.node()));
    write_text(diag_path, report.str() + "\n");
    out << report.str() << "\n";
    return kNoConvergence;
  }

  Trajectory& u = res.trajectory;
  pressure_recover(u, rc.forcing, rc.solver);
  record_norms(u, rc.solver);
  const Residual resid = residual_check(u, rc.initial, rc.forcing, rc.solver);

  report.add("status", "converged");
  report.add("diagnostics", diagnostics_json(res.diagnostics));
  JsonObject r;
  r.add("relative", resid.relative).add("absolute", resid.absolute).add("scale", resid.scale);
  r.add("worst_node", static_cast<std::uint64_t>(resid.worst_node)).add("threshold", rc.residual_threshold);
  report.add("residual", r);
  report.add("max_divergence", max_divergence(u));
  if (rc.uniqueness_check) {
    const SolveResult zero = picard_solve(rc.initial, rc.forcing, rc.solver, k, PicardStart::Halved);
    std::vector<SpectralField> diff;
    for (std::size_t j = 0; j < u.velocity.size(); ++j)
      diff.push_back(u.velocity[j] - zero.trajectory.velocity[j]);
    const auto& h = rc.solver.hypothesis;
    report.add("two_start_difference",
               trajectory_norm(diff, u.times, rc.solver, {h.s + 2.0 * h.alpha, h.p, 1.0}));
  }

  write_text(rc.output_dir / "norms.csv", norms_csv(u));
  if (rc.write_fields) {
    char name[64];
    for (std::size_t j = 0; j < u.times.size(); ++j) {
      std::snprintf(name, sizeof name, "u_%04zu.gnsf", j);
      save_field(rc.output_dir / name, u.velocity[j]);
      std::snprintf(name, sizeof name, "gradp_%04zu.gnsf", j);
      save_field(rc.output_dir / name, u.pressure_gradient[j]);
    }
  }
  write_text(diag_path, report.str() + "\n");
  out << report.str() << "\n";
  if (!(resid.relative < rc.residual_threshold)) {
    err << "residual " << resid.relative << " exceeds threshold " << rc.residual_threshold << "\n";
    return kResidual;
  }
  return kOk;
}

struct ScalingFlags {
  std::string field;
  std::vector<int> mode;
  int points = 32;
  double lambda = 2.0;
  double horizon = 1.0;
  int nodes = 32;
  double tolerance = 0.02;
};

int cmd_scaling(const HypothesisFlags& hf, const ScalingFlags& sf, std::ostream& out, std::ostream& err) {
  HypothesisSet h;
  try {
    h = check_hypotheses(hf.input());
  } catch (const ValidationError& e) {
    print_violations(out, e);
    return kInvalid;
  }
  SpectralField a = SpectralField(Grid::make(h.n, 8), h.n);
  if (!sf.field.empty()) {
    a = load_field(sf.field);
  } else if (!sf.mode.empty()) {
    if (sf.mode.size() != static_cast<std::size_t>(h.n)) {
      err << "--mode needs one entry per axis\n";
      return kUsage;
    }
    std::array<int, 3> z{};
    std::copy(sf.mode.begin(), sf.mode.end(), z.begin());
    a = single_mode(Grid::make(h.n, sf.points), z);
  } else {
    err << "scaling needs --field or --mode\n";
    return kUsage;
  }
  if (a.grid().dim() != h.n || !a.is_vector()) {
    err << "field must be a vector field in dimension n\n";
    return kUsage;
  }
  const double k0 = a.grid().fundamental();
  const auto nodes = log_uniform_nodes(sf.horizon / std::pow(k0, 2.0 * h.alpha), static_cast<std::size_t>(sf.nodes));
  std::vector<SpectralField> u;
  for (double t : nodes) u.push_back(semigroup_apply(a, t, h.alpha));
  ScalingRatios ratios;
  try {
    ratios = scaling_invariance_check(a, nodes, u, h, sf.lambda);
  } catch (const RangeError& e) {
    JsonObject o;
    o.add("lambda", sf.lambda).add("resolved", false).add("error", std::string(e.what()));
    out << o.str() << "\n";
    return kInvalid;
  }
  const bool within = std::abs(ratios.initial - 1.0) <= sf.tolerance && std::abs(ratios.temporal - 1.0) <= sf.tolerance;
  JsonObject o;
  o.add("lambda", ratios.lambda)
      .add("resolved", true)
      .add("hypothesis_label", label_name(h.label))
      .add("initial_ratio", ratios.initial)
      .add("temporal_ratio", ratios.temporal)
      .add("tolerance", sf.tolerance)
      .add("within_tolerance", within);
  out << o.str() << "\n";
  return within ? kOk : kInvalid;
}

struct NormFlags {
  std::string field;
  std::string field_id;
  double s = 0.0;
  std::string p = "2";
  std::string r = "2";
  int difference_order = 0;
  int shift_samples = 256;
  std::uint64_t seed = 1;
  std::string trajectory;
  double rho = 2.0;
};

int cmd_norms(const NormFlags& nf, std::ostream& out, std::ostream& err) {
  if (!nf.trajectory.empty()) {
    std::ifstream in(nf.trajectory);
    if (!in) throw IoError("cannot open " + nf.trajectory);
    const TimeSamples ts = read_csv(in);
    const LorentzIndex idx = LorentzIndex::make(nf.rho, parse_extended_real(nf.r));
    JsonObject o;
    o.add("trajectory", nf.trajectory).add("rho", idx.rho).add("r", idx.r);
    o.add("horizon", ts.horizon()).add("value", lorentz_norm(ts, idx));
    out << o.str() << "\n";
    return kOk;
  }
  if (nf.field.empty()) {
    err << "norms needs --field or --trajectory\n";
    return kUsage;
  }
  const SpectralField f = load_field(nf.field);
  const BesovIndex idx = BesovIndex::make(nf.s, parse_extended_real(nf.p), parse_extended_real(nf.r));
  const DyadicCutoff cutoff = DyadicCutoff::build(f.grid());
  const double value = besov_norm(f, idx, cutoff);
  JsonObject o = norm_json(nf.field_id.empty() ? nf.field : nf.field_id, idx, cutoff.q_min(), cutoff.q_max(), value);
  if (nf.difference_order > 0) {
    DifferenceNormOptions opts;
    opts.s = idx.s;
    opts.p = idx.p;
    opts.r = idx.r;
    opts.order = nf.difference_order;
    opts.shift_samples = nf.shift_samples;
    opts.seed = nf.seed;
    o.add("difference_value", difference_norm(f, opts));
  }
  out << o.str() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalised Navier-Stokes toolkit: hypotheses, inequality checks, mild solver"};
  app.name("gns");
  app.require_subcommand(1);

  HypothesisFlags hyp_flags;
  auto* hyp = app.add_subcommand("hypotheses", "validate a hypothesis set and derive exponents");
  hyp_flags.attach(hyp, true);

  HypothesisFlags ver_hyp;
  VerifyFlags ver_flags;
  auto* ver = app.add_subcommand("verify", "estimate inequality constants by random sampling");
  ver_hyp.attach(ver, false);
  ver->add_option("--ineq", ver_flags.ineq, "inequality id, all, or lemma-ab")->required();
  ver->add_option("--samples", ver_flags.samples, "sample count")->check(CLI::PositiveNumber);
  ver->add_option("--seed", ver_flags.seed, "random seed");
  ver->add_option("--out", ver_flags.out_dir, "directory for per-inequality report files");
  ver->add_option("--points", ver_flags.lab.points, "lab grid points per axis");
  ver->add_option("--band", ver_flags.lab.band, "band limit of sampled fields");
  ver->add_option("--sigma", ver_flags.lab.sigma, "spectral decay of sampled fields");
  ver->add_option("--nodes", ver_flags.lab.time_nodes, "time nodes of sampled trajectories");

  SolveFlags solve_flags;
  auto* sol = app.add_subcommand("solve", "run the Picard solver from a JSON config");
  sol->add_option("config", solve_flags.config, "config file")->required()->check(CLI::ExistingFile);
  sol->add_option("--gate", solve_flags.gate, "gate policy override")->check(CLI::IsMember({"warn", "abort"}));
  sol->add_option("--out", solve_flags.out_dir, "output directory override");

  HypothesisFlags sc_hyp;
  ScalingFlags sc_flags;
  auto* sca = app.add_subcommand("scaling", "check invariance of the critical norms under dilation");
  sc_hyp.attach(sca, true);
  sca->add_option("--field", sc_flags.field, "initial field file")->check(CLI::ExistingFile);
  sca->add_option("--mode", sc_flags.mode, "single-mode wavevector, one integer per axis")->delimiter(',');
  sca->add_option("--points", sc_flags.points, "grid points for --mode");
  sca->add_option("--lambda", sc_flags.lambda, "dilation factor, a power of two");
  sca->add_option("--horizon", sc_flags.horizon, "trajectory horizon in units of 1/k0^{2 alpha}");
  sca->add_option("--nodes", sc_flags.nodes, "trajectory time nodes");

  NormFlags norm_flags;
  auto* nor = app.add_subcommand("norms", "Besov norm of a field file or Lorentz norm of a trajectory CSV");
  nor->add_option("--field", norm_flags.field, "field file")->check(CLI::ExistingFile);
  nor->add_option("--field-id", norm_flags.field_id, "identifier for the report");
  nor->add_option("--s", norm_flags.s, "regularity s");
  nor->add_option("--p", norm_flags.p, "integrability p (number or inf)");
  nor->add_option("--r", norm_flags.r, "summation index r (number or inf)");
  nor->add_option("--difference-order", norm_flags.difference_order, "also estimate the difference form of order k");
  nor->add_option("--shift-samples", norm_flags.shift_samples, "shift samples for the difference form");
  nor->add_option("--seed", norm_flags.seed, "random seed for the difference form");
  nor->add_option("--trajectory", norm_flags.trajectory, "two-column CSV t,value")->check(CLI::ExistingFile);
  nor->add_option("--rho", norm_flags.rho, "Lorentz exponent rho");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (hyp->parsed()) return cmd_hypotheses(hyp_flags, out);
    if (ver->parsed()) {
      if (ver_flags.ineq != "lemma-ab") {
        for (const char* flag : {"--m", "--n", "--p", "--alpha", "--rho"})
          if (ver->count(flag) == 0) {
            err << "verify --ineq " << ver_flags.ineq << " needs " << flag << "\n";
            return kUsage;
          }
      }
      return cmd_verify(ver_hyp, ver_flags, out, err);
    }
    if (sol->parsed()) return cmd_solve(solve_flags, out, err);
    if (sca->parsed()) return cmd_scaling(sc_hyp, sc_flags, out, err);
    if (nor->parsed()) return cmd_norms(norm_flags, out, err);
  } catch (const ValidationError& e) {
    print_violations(out, e);
    return kInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace gns::cli
