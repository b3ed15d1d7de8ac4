#include "horolab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace horolab {

Outcome Report::overall() const {
  Outcome out = Outcome::Pass;
  for (const auto& c : checks) {
    if (c.status == Outcome::Fail) return Outcome::Fail;
    if (c.status == Outcome::Inconclusive) out = Outcome::Inconclusive;
  }
  return out;
}

Json report_to_json(const Report& report) {
  Json j;
  j["analysis"] = report.analysis;
  j["seed"] = report.seed;
  j["space"] = report.space;
  if (!report.map.is_null()) j["map"] = report.map;
  j["details"] = report.details;
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["status"] = to_string(c.status);
    cj["value"] = c.value;
    cj["tolerance"] = c.tolerance;
    cj["provenance"] = c.provenance;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["status"] = to_string(report.overall());
  return j;
}

namespace {

void write_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void write_number(std::string& out, const Json& j) {
  if (j.is_number_integer()) {
    out += std::to_string(j.get<long long>());
    return;
  }
  if (j.is_number_unsigned()) {
    out += std::to_string(j.get<unsigned long long>());
    return;
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {  // JSON has no inf/nan; record absence instead
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  out += buf;
}

void write_value(std::string& out, const Json& j, int indent) {
  const std::string pad(2 * indent, ' ');
  const std::string pad_in(2 * (indent + 1), ' ');
  if (j.is_null()) {
    out += "null";
  } else if (j.is_boolean()) {
    out += j.get<bool>() ? "true" : "false";
  } else if (j.is_number()) {
    write_number(out, j);
  } else if (j.is_string()) {
    write_escaped(out, j.get<std::string>());
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad_in;
      write_value(out, j[i], indent + 1);
      if (i + 1 < j.size()) out += ',';
      out += '\n';
    }
    out += pad + "]";
  } else {  // object; nlohmann's default object_t keeps keys sorted
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += pad_in;
      write_escaped(out, it.key());
      out += ": ";
      write_value(out, it.value(), indent + 1);
      if (i + 1 < j.size()) out += ',';
      out += '\n';
    }
    out += pad + "}";
  }
}

void flatten_csv(const Json& j, const std::string& path,
                 std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_csv(it.value(), path.empty() ? it.key() : path + "." + it.key(), rows);
    return;
  }
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten_csv(j[i], path + "." + std::to_string(i), rows);
    return;
  }
  std::string value;
  if (j.is_string()) {
    value = j.get<std::string>();
    // commas inside values would break the two-column layout
    std::replace(value.begin(), value.end(), ',', ';');
  } else if (j.is_boolean()) {
    value = j.get<bool>() ? "true" : "false";
  } else if (j.is_null()) {
    value = "null";
  } else {
    std::string num;
    write_number(num, j);
    value = num;
  }
  rows.emplace_back(path, value);
}

}  // namespace

std::string canonical_json(const Json& j) {
  std::string out;
  write_value(out, j, 0);
  out += '\n';
  return out;
}

std::string to_csv(const Json& j) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten_csv(j, "", rows);
  std::sort(rows.begin(), rows.end());
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) {
    out += k;
    out += ',';
    out += v;
    out += '\n';
  }
  return out;
}

std::string emit_report(const Report& report, const std::string& format) {
  const Json j = report_to_json(report);
  if (format == "json") return canonical_json(j);
  if (format == "csv") return to_csv(j);
  throw ArgumentError("unknown report format '" + format + "'");
}

int exit_code_for(const Report& report) {
  switch (report.overall()) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 1;
    case Outcome::Inconclusive: return 2;
  }
  return 3;
}

}  // namespace horolab
