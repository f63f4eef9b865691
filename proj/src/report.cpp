#include "gns/report.hpp"

#include <cmath>
#include <cstdio>

namespace gns {

std::string json_number(double x) {
  if (std::isnan(x)) return "null";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

JsonObject& JsonObject::add(const std::string& key, double value) {
  entries_.emplace_back(key, json_number(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, int value) {
  entries_.emplace_back(key, std::to_string(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, long value) {
  entries_.emplace_back(key, std::to_string(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, std::uint64_t value) {
  entries_.emplace_back(key, std::to_string(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, bool value) {
  entries_.emplace_back(key, value ? "true" : "false");
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const char* value) {
  return add(key, std::string(value));
}
JsonObject& JsonObject::add(const std::string& key, const std::string& value) {
  entries_.emplace_back(key, json_string(value));
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const JsonObject& value) {
  entries_.emplace_back(key, value.str());
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + json_number(values[i]);
  entries_.emplace_back(key, s + "]");
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const std::vector<std::string>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + json_string(values[i]);
  entries_.emplace_back(key, s + "]");
  return *this;
}
JsonObject& JsonObject::add(const std::string& key, const std::vector<JsonObject>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + values[i].str();
  entries_.emplace_back(key, s + "]");
  return *this;
}
JsonObject& JsonObject::add_null(const std::string& key) {
  entries_.emplace_back(key, "null");
  return *this;
}

std::string JsonObject::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ",";
    s += json_string(entries_[i].first) + ":" + entries_[i].second;
  }
  return s + "}";
}

JsonObject hypothesis_json(const HypothesisSet& h) {
  JsonObject o;
  o.add("label", label_name(h.label))
      .add("m", h.m)
      .add("n", h.n)
      .add("p", h.p)
      .add("alpha", h.alpha)
      .add("rho", h.rho)
      .add("r", h.r)
      .add("p0", h.p0)
      .add("s", h.s)
      .add("s_tilde", h.s_tilde)
      .add("rho_tilde", h.rho_tilde)
      .add("s0", h.s0);
  std::vector<JsonObject> conds;
  for (const auto& c : h.conditions) {
    JsonObject j;
    j.add("tag", c.tag).add("condition", c.text).add("lower", c.lower).add("value", c.value);
    j.add("upper", c.upper).add("margin", c.margin).add("holds", c.holds);
    conds.push_back(j);
  }
  o.add("conditions", conds);
  JsonObject w;
  w.add("equality_defect", h.exponents.window_equality_defect)
      .add("lower_margin", h.exponents.window_lower_margin)
      .add("upper_margin", h.exponents.window_upper_margin);
  o.add("semigroup_window", w);
  return o;
}

JsonObject inequality_json(const InequalityReport& rep) {
  JsonObject params;
  for (const auto& [k, v] : rep.params) params.add(k, v);
  JsonObject o;
  o.add("ineq_id", inequality_name(rep.id))
      .add("hypothesis_label", rep.label)
      .add("params", params)
      .add("samples", rep.samples)
      .add("max_ratio", rep.max_ratio)
      .add("median_ratio", rep.median_ratio)
      .add("violations", rep.violations)
      .add("skipped", rep.skipped)
      .add("seed", rep.seed);
  return o;
}

JsonObject lemma_json(const LemmaReport& rep) {
  JsonObject o;
  o.add("ineq_id", "LEMMA_AB")
      .add("samples", rep.samples)
      .add("max_ratio", rep.max_ratio)
      .add("violations", rep.violations)
      .add("seed", rep.seed);
  return o;
}

JsonObject diagnostics_json(const ContractionDiagnostics& d) {
  JsonObject o;
  o.add("K0", d.K0).add("eta", d.eta);
  if (d.lambda1)
    o.add("lambda1", *d.lambda1);
  else
    o.add_null("lambda1");
  o.add("gate", d.gate).add("gate_reason", d.gate_reason);
  JsonObject k;
  k.add("k0", d.constants.k0).add("k1", d.constants.k1).add("k2", d.constants.k2);
  k.add("provenance", d.constants.provenance);
  o.add("constants", k);
  o.add("d_k", d.updates).add("ratios", d.ratios).add("iterations", d.iterations);
  JsonObject norms;
  norms.add("a_critical", d.a_norm).add("f_critical", d.f_norm).add("solution", d.solution_norm);
  norms.add("a_priori_bound", 2.0 * d.K0);
  o.add("norms", norms);
  return o;
}

JsonObject norm_json(const std::string& field_id, const BesovIndex& idx, int q_min, int q_max,
                     double value) {
  JsonObject o;
  o.add("field_id", field_id).add("s", idx.s).add("p", idx.p).add("r", idx.r);
  o.add("q_min", q_min).add("q_max", q_max).add("value", value);
  return o;
}

}  // namespace gns
