#include "gns/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gns/error.hpp"

namespace gns {

const char* label_name(HypothesisLabel label) {
  switch (label) {
    case HypothesisLabel::H0: return "H0";
    case HypothesisLabel::H1: return "H1";
    case HypothesisLabel::H2: return "H2";
  }
  return "?";
}

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Checker {
  std::vector<Condition> conditions;
  std::vector<std::string> violations;

  // lower < value < upper; either side may be a closed bound.
  void between(const std::string& tag, const std::string& lower_text, double lower, bool lower_closed,
               const std::string& value_text, double value, const std::string& upper_text,
               double upper, bool upper_closed = false) {
    Condition c;
    c.tag = tag;
    c.lower = lower;
    c.value = value;
    c.upper = upper;
    c.margin = std::min(value - lower, upper - value);
    const bool lower_ok = lower_closed ? value >= lower : value > lower;
    const bool upper_ok = upper_closed ? value <= upper : value < upper;
    c.holds = lower_ok && upper_ok;
    c.text = lower_text + (lower_closed ? " <= " : " < ") + value_text +
             (upper_closed ? " <= " : " < ") + upper_text;
    if (!lower_ok)
      violations.push_back(tag + ": " + lower_text + (lower_closed ? " <= " : " < ") + value_text +
                           " violated (" + fmt(lower) + (lower_closed ? " > " : " >= ") +
                           fmt(value) + ")");
    if (!upper_ok)
      violations.push_back(tag + ": " + value_text + (upper_closed ? " <= " : " < ") + upper_text +
                           " violated (" + fmt(value) + (upper_closed ? " > " : " >= ") +
                           fmt(upper) + ")");
    conditions.push_back(std::move(c));
  }

  void lower_bound(const std::string& tag, const std::string& value_text, double value,
                   const std::string& lower_text, double lower, bool closed = false) {
    between(tag, lower_text, lower, closed, value_text, value, "inf", INFINITY);
  }
};

}  // namespace

Exponents derive_exponents(const HypothesisSet& h) {
  const double n = h.n;
  Exponents e;
  e.s = n / h.p + 2.0 * h.alpha / h.rho - (2.0 * h.alpha - 1.0) / h.m - 2.0 * h.alpha;
  e.s_tilde = e.s + 2.0 * h.m * h.alpha / h.rho;
  e.rho_tilde = h.rho / (h.m + 1.0);
  e.p0 = h.p0;
  e.s0 = n / h.p0 - (2.0 * h.alpha - 1.0) / h.m;
  const double lhs = e.s - n / h.p - 2.0 * h.alpha / h.rho;
  const double rhs = e.s0 - n / h.p0 - 2.0 * h.alpha;
  e.window_equality_defect = lhs - rhs;
  const double mid = e.s - n / h.p;
  e.window_lower_margin = mid - (e.s0 - n / h.p0 - 2.0 * h.alpha);
  e.window_upper_margin = (e.s0 - n / h.p0) - mid;
  if (std::abs(e.window_equality_defect) > 1e-12)
    throw ConsistencyError("semigroup window equality fails (defect " +
                           fmt(e.window_equality_defect) + ")");
  if (!(e.window_lower_margin > 0.0) || !(e.window_upper_margin > 0.0))
    throw ConsistencyError("semigroup window strict inequalities fail");
  return e;
}

HypothesisSet check_hypotheses(const HypothesisInput& in) {
  Checker ck;
  const double m = in.m, p = in.p, a = in.alpha, rho = in.rho;
  const double n = in.n;

  std::vector<std::string> pre;
  if (!(m >= 1.0) || !std::isfinite(m)) pre.push_back("m >= 1 violated (m = " + fmt(m) + ")");
  if (in.n != 2 && in.n != 3) pre.push_back("n in {2, 3} violated (n = " + std::to_string(in.n) + ")");
  if (!(p > 1.0) || !std::isfinite(p)) pre.push_back("1 < p < inf violated (p = " + fmt(p) + ")");
  if (!(rho > m + 1.0) || !std::isfinite(rho))
    pre.push_back("rho > m + 1 violated (" + fmt(rho) + " <= " + fmt(m + 1.0) + ")");
  if (!(a > 0.5) || !std::isfinite(a)) pre.push_back("alpha > 1/2 violated (alpha = " + fmt(a) + ")");
  if (!(in.r >= 1.0)) pre.push_back("r >= 1 violated (r = " + fmt(in.r) + ")");
  if (!pre.empty()) throw ValidationError("hypothesis preconditions fail", pre);

  HypothesisSet h;
  h.m = m;
  h.n = in.n;
  h.p = p;
  h.alpha = a;
  h.rho = rho;
  h.r = in.r;
  const double two_a_rho = 2.0 * a / rho;

  if (m == 1.0) {
    h.label = HypothesisLabel::H0;
    ck.between("H0.alpha", "1/2", 0.5, false, "alpha", a, "1 + n/(2p)", 1.0 + n / (2.0 * p));
    ck.between("H0.rho", "2alpha - 1 - n/(2p)", 2.0 * a - 1.0 - n / (2.0 * p), false, "2alpha/rho",
               two_a_rho, "2alpha - 1", 2.0 * a - 1.0);
    ck.lower_bound("H0.rho_min", "rho", rho, "2", 2.0);
  } else if (m < 2.0) {
    h.label = HypothesisLabel::H1;
    const double plo = std::max((m - 1.0) * n / (3.0 - m), (4.0 - m) / (3.0 - m));
    ck.between("H1.p", "max{(m-1)n/(3-m), (4-m)/(3-m)}", plo, false, "p", p, "n/(m-1)", n / (m - 1.0));
    ck.between("H1.alpha", "1/2 + m(2-m)n/(2(3-m)p)",
               0.5 + m * (2.0 - m) * n / (2.0 * (3.0 - m) * p), false, "alpha", a,
               "(m+1)/2 + mn/(2p)", (m + 1.0) / 2.0 + m * n / (2.0 * p));
    ck.between("H1.rho", "(2alpha-1)/m - n/((m+1)p)", (2.0 * a - 1.0) / m - n / ((m + 1.0) * p),
               false, "2alpha/rho", two_a_rho, "(2alpha-1)/m - (2-m)n/((3-m)p)",
               (2.0 * a - 1.0) / m - (2.0 - m) * n / ((3.0 - m) * p));
  } else {
    h.label = HypothesisLabel::H2;
    ck.between("H2.p", "n", n, true, "p", p, "2n", 2.0 * n);
    ck.between("H2.alpha", "1/2", 0.5, false, "alpha", a, "1/2 + mn/p", 0.5 + m * n / p);
    ck.between("H2.rho", "(2alpha-1)/m + (1 - 2n/p)/(m+1)",
               (2.0 * a - 1.0) / m + (1.0 - 2.0 * n / p) / (m + 1.0), false, "2alpha/rho", two_a_rho,
               "(2alpha-1)/m", (2.0 * a - 1.0) / m);
  }

  h.p0 = in.p0 ? *in.p0 : n / (n / p + two_a_rho);
  ck.between("p0", "1", 1.0, false, "p0", h.p0, "p", p, true);

  if (!ck.violations.empty())
    throw ValidationError(std::string("hypothesis ") + label_name(h.label) + " fails",
                          ck.violations);
  h.conditions = std::move(ck.conditions);
  h.exponents = derive_exponents(h);
  h.s = h.exponents.s;
  h.s_tilde = h.exponents.s_tilde;
  h.rho_tilde = h.exponents.rho_tilde;
  h.s0 = h.exponents.s0;
  return h;
}

void require_solver_compatible(const HypothesisSet& h) {
  if (h.p < 2.0)
    throw ValidationError("solver needs p >= 2", {"p >= 2 violated (p = " + fmt(h.p) + ")"});
}

}  // namespace gns
