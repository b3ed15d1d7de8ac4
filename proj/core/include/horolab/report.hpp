#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "horolab/common.hpp"

namespace horolab {

using Json = nlohmann::json;

/// One verdict with the threshold it was judged at and where that threshold
/// comes from.
struct Check {
  std::string name;
  Outcome status = Outcome::Inconclusive;
  double value = 0.0;
  double tolerance = 0.0;
  std::string provenance;
};

struct Report {
  std::string analysis;
  std::uint64_t seed = 0;
  Json space;
  Json map;  // null when no map is involved
  Json details = Json::object();
  std::vector<Check> checks;

  /// Fail dominates, then inconclusive, then pass.
  Outcome overall() const;
};

Json report_to_json(const Report& report);

/// Canonical serialization: keys sorted, doubles printed with 12 significant
/// digits, 2-space indent, trailing newline. Identical inputs produce
/// byte-identical output.
std::string canonical_json(const Json& j);

/// Flattens scalar leaves to "path,value" lines (header "key,value").
std::string to_csv(const Json& j);

std::string emit_report(const Report& report, const std::string& format);

/// 0 all-pass, 1 any fail, 2 inconclusive (no fail).
int exit_code_for(const Report& report);

}  // namespace horolab
