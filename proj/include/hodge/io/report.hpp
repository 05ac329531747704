#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hodge/core/error.hpp"

namespace hodge {

inline constexpr int report_version = 1;

/// Two-space indented JSON with arrays of scalars kept on one line.
inline std::string pretty_json(const nlohmann::ordered_json& j, std::size_t indent = 0) {
  const std::string pad(indent, ' '), inner(indent + 2, ' ');
  if (j.is_object()) {
    if (j.empty()) return "{}";
    std::string out = "{\n";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      out += (first ? "" : ",\n") + inner + nlohmann::ordered_json(k).dump() + ": " + pretty_json(v, indent + 2);
      first = false;
    }
    return out + "\n" + pad + "}";
  }
  if (j.is_array()) {
    if (std::all_of(j.begin(), j.end(), [](const auto& x) { return x.is_primitive(); })) {
      std::string out = "[";
      for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + j[i].dump();
      return out + "]";
    }
    std::string out = "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ",\n" : "") + inner + pretty_json(j[i], indent + 2);
    return out + "\n" + pad + "]";
  }
  return j.dump();
}

struct Check {
  std::string name;
  bool passed = true;
  /// Witness or explanation; empty when nothing to add.
  std::string detail;
};

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string task;
  std::string label;
  std::vector<std::pair<std::string, std::string>> facts;
  std::vector<Check> checks;
  std::vector<Table> tables;
  /// Wall-clock milliseconds per phase; text format only unless requested.
  std::vector<std::pair<std::string, double>> timings;
  std::optional<ErrorCode> error;
  std::string error_message;

  void fact(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
  Check& check(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
    return checks.back();
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  bool passed() const {
    return !error && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  std::string status() const { return error ? "error" : passed() ? "pass" : "fail"; }
};

enum class ReportFormat { Text, Structured };

/// Process exit status: 0 all checks pass, 1 a check failed, 2 input error,
/// 3 internal error.
inline int exit_status(const Report& r) {
  if (r.error) return *r.error == ErrorCode::Internal ? 3 : 2;
  return r.passed() ? 0 : 1;
}

inline nlohmann::ordered_json report_json(const Report& r, bool timings = false) {
  using J = nlohmann::ordered_json;
  J j{{"format", "hodgekit-report"}, {"version", report_version}, {"task", r.task}};
  if (!r.label.empty()) j["label"] = r.label;
  j["status"] = r.status();
  if (r.error) j["error"] = {{"code", std::string(to_string(*r.error))}, {"message", r.error_message}};
  if (!r.facts.empty()) {
    J f = J::object();
    for (const auto& [k, v] : r.facts) f[k] = v;
    j["facts"] = f;
  }
  if (!r.checks.empty()) {
    J cs = J::array();
    for (const auto& c : r.checks) {
      J cj{{"name", c.name}, {"passed", c.passed}};
      if (!c.detail.empty()) cj["detail"] = c.detail;
      cs.push_back(cj);
    }
    j["checks"] = cs;
  }
  if (!r.tables.empty()) {
    J ts = J::array();
    for (const auto& t : r.tables) ts.push_back({{"title", t.title}, {"columns", t.columns}, {"rows", t.rows}});
    j["tables"] = ts;
  }
  if (timings && !r.timings.empty()) {
    J tm = J::object();
    for (const auto& [k, v] : r.timings) tm[k] = v;
    j["timings_ms"] = tm;
  }
  return j;
}

inline std::string render_table(const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t c = 0; c < t.columns.size(); ++c) width[c] = t.columns[c].size();
  for (const auto& row : t.rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    os << " ";
    for (std::size_t c = 0; c < width.size(); ++c) {
      const std::string& s = c < cells.size() ? cells[c] : std::string();
      os << " " << s << std::string(width[c] - s.size(), ' ');
    }
    std::string out = os.str();
    while (!out.empty() && out.back() == ' ') out.pop_back();
    os.str("");
    return out + "\n";
  };
  std::string out = t.title + "\n" + line(t.columns);
  for (const auto& row : t.rows) out += line(row);
  return out;
}

/// Text format: one header line, then facts, checks, tables and timings.
inline std::string emit_report(const Report& r, ReportFormat format, bool timings = false) {
  if (format == ReportFormat::Structured) return pretty_json(report_json(r, timings)) + "\n";
  std::string out = "hodgekit report: " + (r.task.empty() ? std::string("(empty)") : r.task);
  if (!r.label.empty()) out += " [" + r.label + "]";
  out += "\n";
  if (r.error) out += "error (" + std::string(to_string(*r.error)) + "): " + r.error_message + "\n";
  if (r.facts.empty() && r.checks.empty() && r.tables.empty() && !r.error) return out;
  for (const auto& [k, v] : r.facts) out += k + ": " + v + "\n";
  for (const auto& c : r.checks) out += (c.passed ? "[pass] " : "[FAIL] ") + c.name + (c.detail.empty() ? "" : ": " + c.detail) + "\n";
  for (const auto& t : r.tables) out += "\n" + render_table(t);
  if (timings && !r.timings.empty()) {
    out += "\n";
    for (const auto& [k, v] : r.timings) {
      std::ostringstream os;
      os.precision(3);
      os << std::fixed << v;
      out += "time " + k + ": " + os.str() + " ms\n";
    }
  }
  out += "status: " + r.status() + "\n";
  return out;
}

}  // namespace hodge
