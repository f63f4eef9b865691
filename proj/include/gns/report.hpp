#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gns/besov.hpp"
#include "gns/estimates.hpp"
#include "gns/hypotheses.hpp"
#include "gns/solver.hpp"

namespace gns {

/// Insertion-ordered JSON object. Doubles use 17 significant digits; infinities are
/// written as the strings "inf" / "-inf" and NaN as null, so output is byte-stable.
class JsonObject {
 public:
  JsonObject& add(const std::string& key, double value);
  JsonObject& add(const std::string& key, int value);
  JsonObject& add(const std::string& key, long value);
  JsonObject& add(const std::string& key, std::uint64_t value);
  JsonObject& add(const std::string& key, bool value);
  JsonObject& add(const std::string& key, const char* value);
  JsonObject& add(const std::string& key, const std::string& value);
  JsonObject& add(const std::string& key, const JsonObject& value);
  JsonObject& add(const std::string& key, const std::vector<double>& values);
  JsonObject& add(const std::string& key, const std::vector<std::string>& values);
  JsonObject& add(const std::string& key, const std::vector<JsonObject>& values);
  JsonObject& add_null(const std::string& key);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string json_number(double x);
std::string json_string(const std::string& s);

JsonObject hypothesis_json(const HypothesisSet& h);
JsonObject inequality_json(const InequalityReport& rep);
JsonObject lemma_json(const LemmaReport& rep);
JsonObject diagnostics_json(const ContractionDiagnostics& d);
JsonObject norm_json(const std::string& field_id, const BesovIndex& idx, int q_min, int q_max,
                     double value);

}  // namespace gns
