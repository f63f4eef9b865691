#include "gns/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "gns/error.hpp"

namespace gns {

TimeSamples TimeSamples::make(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() != values.size())
    throw ParameterError("time samples need one value per node");
  if (nodes.size() < 2) throw ParameterError("time samples need at least 2 nodes");
  double prev = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (!std::isfinite(nodes[j]) || !(nodes[j] > prev))
      throw ParameterError("time nodes must be positive and strictly increasing");
    if (!std::isfinite(values[j]) || values[j] < 0.0)
      throw ParameterError("trajectory values must be finite and nonnegative");
    prev = nodes[j];
  }
  return {std::move(nodes), std::move(values)};
}

LorentzIndex LorentzIndex::make(double rho, double r) {
  if (!(rho > 1.0) || std::isinf(rho)) throw ParameterError("Lorentz index rho must lie in (1, inf)");
  if (!(r >= 1.0)) throw ParameterError("Lorentz index r must be >= 1");
  return {rho, r};
}

TimeSamples decreasing_rearrangement(const TimeSamples& ts) {
  std::vector<std::size_t> order(ts.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ts.values[a] > ts.values[b]; });
  TimeSamples out;
  out.nodes.reserve(ts.size());
  out.values.reserve(ts.size());
  double t = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    t += ts.length(order[i]);
    out.nodes.push_back(t);
    out.values.push_back(ts.values[order[i]]);
  }
  // Total measure is preserved exactly, not up to summation round-off.
  out.nodes.back() = ts.horizon();
  return out;
}

double lorentz_norm(const TimeSamples& ts, const LorentzIndex& idx, double horizon) {
  if (!(idx.rho > 1.0) || std::isinf(idx.rho)) throw ParameterError("Lorentz index rho must lie in (1, inf)");
  if (!(idx.r >= 1.0)) throw ParameterError("Lorentz index r must be >= 1");
  if (horizon < ts.horizon()) throw ParameterError("horizon precedes the last time node");
  const TimeSamples star = decreasing_rearrangement(ts);
  if (std::isinf(idx.r)) {
    double sup = 0.0;
    for (std::size_t j = 0; j < star.size(); ++j)
      sup = std::max(sup, star.values[j] * std::pow(star.nodes[j], 1.0 / idx.rho));
    return sup;
  }
  const double e = idx.r / idx.rho;
  double acc = 0.0;
  double a = 0.0;
  for (std::size_t j = 0; j < star.size(); ++j) {
    const double b = star.nodes[j];
    if (star.values[j] > 0.0)
      acc += std::pow(star.values[j], idx.r) * (idx.rho / idx.r) * (std::pow(b, e) - std::pow(a, e));
    a = b;
  }
  return std::pow(acc, 1.0 / idx.r);
}

double lorentz_norm(const TimeSamples& ts, const LorentzIndex& idx) {
  return lorentz_norm(ts, idx, ts.horizon());
}

TimeSamples pointwise_power(const TimeSamples& ts, double m) {
  TimeSamples out = ts;
  for (double& v : out.values) v = std::pow(v, m);
  return out;
}

PowerIdentity power_identity_check(const TimeSamples& ts, double m, const LorentzIndex& idx) {
  if (!(m >= 1.0)) throw ParameterError("power identity needs m >= 1");
  PowerIdentity res;
  res.lhs = lorentz_norm(pointwise_power(ts, m), idx);
  const LorentzIndex scaled{m * idx.rho, m * idx.r};
  res.rhs = std::pow(lorentz_norm(ts, scaled), m);
  return res;
}

TimeSamples pointwise_product(const std::vector<TimeSamples>& factors) {
  if (factors.empty()) throw ParameterError("product needs at least one factor");
  std::vector<double> nodes;
  for (const auto& f : factors) nodes.insert(nodes.end(), f.nodes.begin(), f.nodes.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const double horizon = factors.front().horizon();
  for (const auto& f : factors)
    if (f.horizon() != horizon) throw ParameterError("product factors must share the horizon");

  std::vector<double> values(nodes.size(), 1.0);
  for (const auto& f : factors) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      while (f.nodes[j] < nodes[i]) ++j;
      values[i] *= f.values[j];
    }
  }
  return {std::move(nodes), std::move(values)};
}

HolderProduct holder_product_check(const std::vector<TimeSamples>& factors,
                                   const std::vector<double>& rho_i, double rho, double r) {
  if (factors.size() != rho_i.size() || factors.empty())
    throw ParameterError("one exponent is needed per factor");
  double inv = 0.0;
  for (double ri : rho_i) {
    if (!(ri >= rho)) throw ParameterError("every factor exponent must be >= rho");
    inv += 1.0 / ri;
  }
  if (std::abs(inv - 1.0 / rho) > 1e-12)
    throw ParameterError("factor exponents do not satisfy sum 1/rho_i = 1/rho");
  HolderProduct res;
  res.lhs = lorentz_norm(pointwise_product(factors), LorentzIndex::make(rho, r));
  res.rhs_product = 1.0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    res.rhs_product *= lorentz_norm(factors[i], LorentzIndex::make(rho_i[i], r));
  res.ratio = res.rhs_product > 0.0 ? res.lhs / res.rhs_product : 0.0;
  return res;
}

std::vector<double> log_uniform_nodes(double horizon, std::size_t count, double floor_ratio) {
  if (!(horizon > 0.0) || count < 2) throw ParameterError("need horizon > 0 and at least 2 nodes");
  std::vector<double> nodes(count);
  const double lo = std::log(horizon * floor_ratio);
  const double hi = std::log(horizon);
  for (std::size_t j = 0; j < count; ++j)
    nodes[j] = std::exp(lo + (hi - lo) * static_cast<double>(j + 1) / static_cast<double>(count));
  nodes.back() = horizon;
  return nodes;
}

void write_csv(std::ostream& out, const TimeSamples& ts) {
  out << "t,value\n";
  char buf[64];
  for (std::size_t j = 0; j < ts.size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", ts.nodes[j], ts.values[j]);
    out << buf;
  }
}

TimeSamples read_csv(std::istream& in) {
  std::vector<double> nodes, values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("line " + std::to_string(lineno) + ": expected t,value");
    try {
      std::size_t used = 0;
      const double t = std::stod(line.substr(0, comma), &used);
      const double v = std::stod(line.substr(comma + 1));
      nodes.push_back(t);
      values.push_back(v);
    } catch (const std::logic_error&) {
      if (lineno == 1) continue;  // header
      throw IoError("line " + std::to_string(lineno) + ": not a number");
    }
  }
  return TimeSamples::make(std::move(nodes), std::move(values));
}

}  // namespace gns
