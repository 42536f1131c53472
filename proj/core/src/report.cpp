// Copyright 2026 The Panharmonia Authors
// SPDX-License-Identifier: Apache-2.0

#include "panharmonia/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "panharmonia/errors.hpp"

namespace panharmonia {
namespace {

using nlohmann::json;

// JSON has no infinity; store it as a string so the report still round-trips.
json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  throw ParseError("not a number: " + s);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string report_to_json(const CheckReport& report, int indent) {
  json cases = json::array();
  for (const auto& c : report.cases) {
    cases.push_back({{"inputs", c.inputs},
                     {"expected", number(c.expected)},
                     {"observed", number(c.observed)},
                     {"residual", number(c.residual)},
                     {"sigma", number(c.sigma)}});
  }
  const json j = {{"check_id", report.check_id},
                  {"passed", report.passed},
                  {"max_relative_residual", number(report.max_relative_residual)},
                  {"threshold", number(report.threshold)},
                  {"hypothesis_met", report.hypothesis_met},
                  {"cases", cases},
                  {"notes", report.notes}};
  return j.dump(indent);
}

CheckReport report_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    CheckReport report;
    report.check_id = j.at("check_id").get<std::string>();
    report.passed = j.at("passed").get<bool>();
    report.max_relative_residual = read_number(j.at("max_relative_residual"));
    report.threshold = read_number(j.at("threshold"));
    report.hypothesis_met = j.value("hypothesis_met", true);
    report.notes = j.value("notes", std::string{});
    for (const auto& c : j.at("cases")) {
      report.cases.push_back({c.at("inputs").get<std::string>(), read_number(c.at("expected")),
                              read_number(c.at("observed")), read_number(c.at("residual")),
                              read_number(c.value("sigma", json(0.0)))});
    }
    return report;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed check report: ") + e.what());
  }
}

std::string suite_csv(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  os << "check_id,passed,max_relative_residual,threshold,cases,notes\n";
  os << std::setprecision(17);
  for (const auto& r : reports) {
    os << csv_field(r.check_id) << ',' << (r.passed ? "true" : "false") << ',' << r.max_relative_residual << ','
       << r.threshold << ',' << r.cases.size() << ',' << csv_field(r.notes) << '\n';
  }
  return os.str();
}

std::string verdict_to_json(const Verdict& verdict, int indent) {
  json profile = json::array();
  for (const auto& [r, residual] : verdict.residual_profile) profile.push_back({number(r), number(residual)});
  json j = {{"class", std::string(to_string(verdict.cls))},
            {"mu_hat", verdict.mu_hat ? json(*verdict.mu_hat) : json(nullptr)},
            {"confidence", number(verdict.confidence)},
            {"residual_profile", profile}};
  return j.dump(indent);
}

}  // namespace panharmonia
