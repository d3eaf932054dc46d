#pragma once

// Row-oriented reports: RFC-4180 CSV and versioned JSON. Needs json.hpp on
// the include path.

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#ifndef KAPPA_FOURIER_VERSION
#define KAPPA_FOURIER_VERSION "unknown"
#endif

namespace kappa_fourier::report {

inline constexpr const char* kSchema = "kappa-fourier/1";

using Cell = std::variant<std::monostate, double, long long, std::string>;

/// %.17g, with nan/inf spelled out.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(double x) const { return format_double(x); }
    std::string operator()(long long x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, c);
}

/// Quotes a field when it holds a comma, quote, CR or LF.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline nlohmann::json cell_json(const Cell& c) {
  struct {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(double x) const {
      if (std::isfinite(x)) return x;
      return format_double(x);
    }
    nlohmann::json operator()(long long x) const { return x; }
    nlohmann::json operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, c);
}

struct SuiteTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;  // effective config, in key order
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::size_t row_errors = 0;
  bool numerical_error = false;
  SuiteTally suites;
  bool has_suites = false;
  double wall_seconds = 0.0;
  nlohmann::json extra_metadata = nlohmann::json::object();

  void add_row(std::vector<Cell> row) {
    row.resize(columns.size());
    rows.push_back(std::move(row));
  }

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      if (columns[i] == name) return i;
    return columns.size();
  }
};

inline void write_csv(std::ostream& os, const Report& rep) {
  auto line = [&](const auto& fields, auto text) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os << ',';
      os << csv_field(text(fields[i]));
    }
    os << "\r\n";
  };
  line(rep.columns, [](const std::string& s) { return s; });
  for (const auto& row : rep.rows) line(row, [](const Cell& c) { return cell_text(c); });
}

inline nlohmann::json to_json(const Report& rep) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["command"] = rep.command;
  nlohmann::json cfg = nlohmann::json::object();
  for (const auto& [k, v] : rep.config) cfg[k] = v;
  j["config"] = cfg;
  j["columns"] = rep.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rep.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < rep.columns.size(); ++i) obj[rep.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  nlohmann::json summary;
  summary["rows"] = rep.rows.size();
  summary["row_errors"] = rep.row_errors;
  if (rep.has_suites) {
    summary["suites_passed"] = rep.suites.passed;
    summary["suites_failed"] = rep.suites.failed;
  }
  j["summary"] = std::move(summary);
  nlohmann::json meta = rep.extra_metadata;
  meta["version"] = KAPPA_FOURIER_VERSION;
  meta["wall_seconds"] = rep.wall_seconds;
  j["metadata"] = std::move(meta);
  return j;
}

inline void write_json(std::ostream& os, const Report& rep) { os << to_json(rep).dump(2) << '\n'; }

}  // namespace kappa_fourier::report
