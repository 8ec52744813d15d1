#include "caplab/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "caplab/errors.hpp"

namespace caplab {

const char* to_string(CheckStatus s) { return s == CheckStatus::kPass ? "pass" : "fail"; }

bool VerificationReport::passed() const noexcept {
  for (const auto& c : checks) {
    if (!c.passed()) return false;
  }
  return true;
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.check == name) return &c;
  }
  return nullptr;
}

CheckResult compare_check(std::string name, double computed, double expected, double tolerance,
                          std::optional<std::string> witness) {
  CheckResult r;
  r.check = std::move(name);
  r.computed = computed;
  r.expected = expected;
  r.tolerance = tolerance;
  const bool ok = computed == expected || std::abs(computed - expected) <= tolerance;
  r.status = ok ? CheckStatus::kPass : CheckStatus::kFail;
  r.witness = std::move(witness);
  return r;
}

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (!std::isfinite(v)) return Json(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf"));
  return Json(v);
}

double read_number(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return HUGE_VAL;
    if (s == "-inf") return -HUGE_VAL;
    return std::nan("");
  }
  return j.get<double>();
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // %.17g round-trips every double
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
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

std::string format_report(const VerificationReport& report, ReportFormat format,
                          bool include_timing) {
  if (format == ReportFormat::kJson) {
    Json rows = Json::array();
    for (const auto& c : report.checks) {
      Json row;
      row["check"] = c.check;
      row["status"] = to_string(c.status);
      row["computed"] = number(c.computed);
      row["expected"] = number(c.expected);
      row["tolerance"] = number(c.tolerance);
      if (c.witness) row["witness"] = *c.witness;
      row["runtime_ms"] = include_timing && c.runtime_ms ? number(*c.runtime_ms) : Json(nullptr);
      rows.push_back(std::move(row));
    }
    return rows.dump(2) + "\n";
  }
  std::string out = "check,status,computed,expected,tolerance,witness,runtime_ms\n";
  for (const auto& c : report.checks) {
    out += csv_field(c.check) + "," + to_string(c.status) + "," + csv_number(c.computed) + "," +
           csv_number(c.expected) + "," + csv_number(c.tolerance) + "," +
           csv_field(c.witness.value_or("")) + "," +
           (include_timing && c.runtime_ms ? csv_number(*c.runtime_ms) : std::string()) + "\n";
  }
  return out;
}

VerificationReport parse_json_report(const std::string& text) {
  VerificationReport report;
  try {
    const auto rows = Json::parse(text);
    for (const auto& row : rows) {
      CheckResult c;
      c.check = row.at("check").get<std::string>();
      c.status = row.at("status").get<std::string>() == "pass" ? CheckStatus::kPass : CheckStatus::kFail;
      c.computed = read_number(row.at("computed"));
      c.expected = read_number(row.at("expected"));
      c.tolerance = read_number(row.at("tolerance"));
      if (row.contains("witness")) c.witness = row["witness"].get<std::string>();
      if (row.contains("runtime_ms") && !row["runtime_ms"].is_null()) {
        c.runtime_ms = read_number(row["runtime_ms"]);
      }
      report.checks.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("report parse: ") + e.what());
  }
  return report;
}

void print_summary(std::ostream& out, const VerificationReport& report) {
  std::size_t width = 5;
  for (const auto& c : report.checks) width = std::max(width, c.check.size());
  out << std::left << std::setw(static_cast<int>(width) + 2) << "check" << std::setw(6) << "status"
      << std::right << std::setw(16) << "computed" << std::setw(16) << "expected" << std::setw(12)
      << "tolerance" << std::setw(11) << "ms" << "\n";
  for (const auto& c : report.checks) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << c.check << std::setw(6)
        << to_string(c.status) << std::right << std::setprecision(9) << std::setw(16) << c.computed
        << std::setw(16) << c.expected << std::setprecision(3) << std::setw(12) << c.tolerance
        << std::setw(11) << std::fixed << std::setprecision(1) << c.runtime_ms.value_or(0.0)
        << std::defaultfloat << "\n";
    if (c.witness && !c.passed()) out << "    witness: " << *c.witness << "\n";
  }
}

}  // namespace caplab
