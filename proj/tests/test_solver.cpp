#include <gtest/gtest.h>

#include <cmath>

#include "gns/error.hpp"
#include "gns/named_fields.hpp"
#include "gns/solver.hpp"
#include "test_util.hpp"

namespace gns {
namespace {

SolverConfig config(double m, double rho, int points, int nodes, double horizon = 1.0) {
  HypothesisInput in;
  in.m = m;
  in.n = 2;
  in.p = 2.0;
  in.alpha = 1.0;
  in.rho = rho;
  SolverConfig cfg;
  cfg.hypothesis = check_hypotheses(in);
  cfg.grid = Grid::make(2, points);
  cfg.horizon = horizon;
  cfg.time_nodes = nodes;
  cfg.power = PowerLaw::make(m);
  cfg.tolerance = 1e-12;
  return cfg;
}

/// Quadratic-formula oracle for the smaller root of k2 x^2 - x + K0 = 0.
double lambda1_oracle(double K0, double k2) { return (1.0 - std::sqrt(1.0 - 4.0 * k2 * K0)) / (2.0 * k2); }

TEST(Gate, WorkedExamples) {
  const ContractionDiagnostics pass = evaluate_gate(0.01, 1.0);
  ASSERT_TRUE(pass.lambda1.has_value());
  EXPECT_NEAR(*pass.lambda1, lambda1_oracle(0.01, 1.0), 1e-12);
  EXPECT_NEAR(*pass.lambda1, 0.010102051443364, 1e-12);
  EXPECT_TRUE(pass.gate);

  const ContractionDiagnostics edge = evaluate_gate(1.0 / 16.0, 1.0);
  ASSERT_TRUE(edge.lambda1.has_value());
  EXPECT_NEAR(*edge.lambda1, (1.0 - std::sqrt(0.75)) / 2.0, 1e-12);
  EXPECT_TRUE(edge.gate);

  const ContractionDiagnostics fail = evaluate_gate(0.3, 1.0);
  EXPECT_FALSE(fail.lambda1.has_value());
  EXPECT_FALSE(fail.gate);
  EXPECT_NE(fail.gate_reason.find("discriminant negative"), std::string::npos);

  const ContractionDiagnostics over = evaluate_gate(0.1, 1.0);
  EXPECT_TRUE(over.lambda1.has_value());
  EXPECT_FALSE(over.gate);
  EXPECT_THROW(evaluate_gate(0.01, 0.5), ParameterError);
}

TEST(Solver, LinearPartOfUnitMode) {
  const SolverConfig cfg = config(1, 3, 16, 16);
  const SpectralField a = single_mode(cfg.grid, {1, 0, 0});
  const Trajectory u = linear_part(a, cfg);
  ASSERT_EQ(u.times.size(), 17u);
  EXPECT_EQ(u.times.front(), 0.0);
  for (std::size_t j = 0; j < u.times.size(); ++j)
    EXPECT_LT(test::max_abs_diff(u.velocity[j], std::exp(-u.times[j]) * a), 1e-15);
  const Trajectory z = linear_part(SpectralField(cfg.grid, 2), cfg);
  for (const auto& v : z.velocity) EXPECT_EQ(max_coefficient(v), 0.0);
}

TEST(Solver, DuhamelOfConstantModeIsExact) {
  const SolverConfig cfg = config(1, 3, 16, 24);
  const SpectralField g = single_mode(cfg.grid, {2, 1, 0});
  const auto times = solver_times(cfg);
  const Trajectory s = duhamel_apply(std::vector<SpectralField>(times.size(), g), cfg);
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double factor = -std::expm1(-5.0 * times[j]) / 5.0;
    EXPECT_LT(test::max_abs_diff(s.velocity[j], factor * g), 1e-15);
  }
}

/// Error against the exact integral of cos(omega t) e^{-(t - tau) lambda} halves with the step.
TEST(Solver, DuhamelIsFirstOrder) {
  const double omega = 3.0, lambda = 1.0;
  auto exact = [&](double t) {
    const double d = lambda * lambda + omega * omega;
    return (lambda * std::cos(omega * t) + omega * std::sin(omega * t) - lambda * std::exp(-lambda * t)) / d;
  };
  std::vector<double> errors;
  for (int nodes : {32, 64, 128}) {
    SolverConfig cfg = config(1, 3, 8, nodes);
    cfg.node_floor = 1e-3;
    const SpectralField base = single_mode(cfg.grid, {1, 0, 0});
    const auto times = solver_times(cfg);
    std::vector<SpectralField> g;
    for (double t : times) g.push_back(std::cos(omega * t) * base);
    const Trajectory s = duhamel_apply(g, cfg);
    double err = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j)
      err = std::max(err, test::max_abs_diff(s.velocity[j], exact(times[j]) * base));
    errors.push_back(err);
  }
  EXPECT_NEAR(errors[0] / errors[1], 2.0, 0.4);
  EXPECT_NEAR(errors[1] / errors[2], 2.0, 0.4);
}

TEST(Solver, ZeroDataGivesZeroSolution) {
  const SolverConfig cfg = config(2, 6, 16, 16);
  const SpectralField a(cfg.grid, 2);
  const Forcing f = Forcing::zero(cfg.grid);
  SolveResult res = picard_solve(a, f, cfg, Constants{});
  EXPECT_EQ(res.diagnostics.iterations, 1);
  EXPECT_EQ(res.diagnostics.updates.front(), 0.0);
  for (const auto& v : res.trajectory.velocity) EXPECT_EQ(max_coefficient(v), 0.0);
  pressure_recover(res.trajectory, f, cfg);
  const Residual r = residual_check(res.trajectory, a, f, cfg);
  EXPECT_EQ(r.absolute, 0.0);
  EXPECT_EQ(r.relative, 0.0);
}

TEST(Solver, PhiAtZeroIsLinearSolution) {
  const SolverConfig cfg = config(2, 6, 16, 12);
  const SpectralField a = 0.01 * test::random_band_limited(cfg.grid, 2, 5, true);
  const Forcing f = Forcing::constant(test::random_band_limited(cfg.grid, 2, 6));
  Trajectory zero;
  zero.times = solver_times(cfg);
  zero.velocity.assign(zero.times.size(), SpectralField(cfg.grid, 2));
  const Trajectory phi = phi_map(zero, a, f, cfg);
  Trajectory lin = linear_part(a, cfg);
  const Trajectory s =
      duhamel_apply(std::vector<SpectralField>(zero.times.size(), leray_project(f.at(0))), cfg);
  for (std::size_t j = 0; j < lin.velocity.size(); ++j)
    EXPECT_LT(test::max_abs_diff(phi.velocity[j], lin.velocity[j] + s.velocity[j]), 1e-15);
}

TEST(Solver, TaylorGreenDecay) {
  const SolverConfig cfg = config(1, 3, 32, 32);
  const SpectralField a = taylor_green(cfg.grid);
  const Forcing f = Forcing::zero(cfg.grid);
  const Trajectory lin = linear_part(a, cfg);
  const Trajectory phi = phi_map(lin, a, f, cfg);
  for (std::size_t j = 0; j < lin.velocity.size(); ++j)
    EXPECT_LT(test::max_abs_diff(phi.velocity[j], lin.velocity[j]), 1e-10);

  SolveResult res = picard_solve(a, f, cfg, Constants{});
  EXPECT_LE(res.diagnostics.iterations, 2);
  Trajectory& u = res.trajectory;
  pressure_recover(u, f, cfg);
  for (std::size_t j = 0; j < u.times.size(); ++j) {
    EXPECT_LT(test::max_abs_diff(u.velocity[j], std::exp(-2.0 * u.times[j]) * a), 1e-12);
    const SpectralField conv = convective_term(u.velocity[j], u.velocity[j], cfg.power);
    EXPECT_LT(test::max_abs_diff(u.pressure_gradient[j], -1.0 * conv), 1e-12);
    EXPECT_LT(max_coefficient(leray_project(u.pressure_gradient[j])), 1e-12);
  }
  EXPECT_LT(max_divergence(u), 1e-12);
}

TEST(Solver, PressureOfGradientForcing) {
  const SolverConfig cfg = config(2, 6, 16, 8);
  const SpectralField grad = gradient(test::random_band_limited(cfg.grid, 1, 7));
  const Forcing f = Forcing::constant(grad);
  Trajectory u;
  u.times = solver_times(cfg);
  u.velocity.assign(u.times.size(), SpectralField(cfg.grid, 2));
  pressure_recover(u, f, cfg);
  for (const auto& p : u.pressure_gradient) EXPECT_LT(test::max_abs_diff(p, grad), 1e-15);
}

TEST(Solver, SmallDataContractionAndFixedPoint) {
  SolverConfig cfg = config(2, 6, 16, 24, 10.0);
  const SpectralField a = 0.02 * test::random_band_limited(cfg.grid, 2, 8, true);
  const Forcing f = Forcing::zero(cfg.grid);
  SolveResult res = picard_solve(a, f, cfg, Constants{});
  for (double r : res.diagnostics.ratios) EXPECT_LE(r, 0.5);
  const Trajectory again = phi_map(res.trajectory, a, f, cfg);
  std::vector<SpectralField> diff;
  for (std::size_t j = 0; j < again.velocity.size(); ++j)
    diff.push_back(again.velocity[j] - res.trajectory.velocity[j]);
  const auto& h = cfg.hypothesis;
  const double d = trajectory_norm(diff, again.times, cfg, {h.s + 2.0 * h.alpha, h.p, 1.0});
  EXPECT_LE(d, 2.0 * cfg.tolerance);
  const SolveResult other = picard_solve(a, f, cfg, Constants{}, PicardStart::Halved);
  for (std::size_t j = 0; j < again.velocity.size(); ++j)
    EXPECT_LT(test::max_abs_diff(other.trajectory.velocity[j], res.trajectory.velocity[j]), 1e-14);
}

TEST(Solver, ErrorsAreReported) {
  SolverConfig cfg = config(2, 6, 16, 16);
  const Forcing f = Forcing::zero(cfg.grid);
  const SpectralField rough = test::random_band_limited(cfg.grid, 2, 9, false);
  EXPECT_THROW(picard_solve(rough, f, cfg, Constants{}), ValidationError);
  cfg.project_initial = true;
  EXPECT_NO_THROW(picard_solve(0.01 * rough, f, cfg, Constants{}));

  cfg.gate_policy = GatePolicy::Abort;
  EXPECT_THROW(picard_solve(10.0 * taylor_green(cfg.grid), f, cfg, Constants{}), GateError);

  cfg.gate_policy = GatePolicy::Warn;
  cfg.max_iterations = 2;
  const SpectralField big = 30.0 * test::random_band_limited(cfg.grid, 2, 10, true);
  try {
    picard_solve(big, f, cfg, Constants{});
    FAIL() << "expected divergence";
  } catch (const DivergenceError& e) {
    EXPECT_EQ(e.updates().size(), 2u);
  } catch (const NumericalBlowupError&) {
  }
}

}  // namespace
}  // namespace gns
