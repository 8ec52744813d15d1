#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace caplab {

enum class CheckStatus { kPass, kFail };

const char* to_string(CheckStatus s);

struct CheckResult {
  std::string check;
  CheckStatus status = CheckStatus::kPass;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::optional<std::string> witness;
  std::optional<double> runtime_ms;

  bool passed() const noexcept { return status == CheckStatus::kPass; }
};

struct VerificationReport {
  std::vector<CheckResult> checks;

  bool passed() const noexcept;
  void append(const VerificationReport& other);
  /// Row named `name`, or nullptr.
  const CheckResult* find(const std::string& name) const;
};

/// Passing row when |computed - expected| <= tolerance.
CheckResult compare_check(std::string name, double computed, double expected, double tolerance,
                          std::optional<std::string> witness = std::nullopt);

enum class ReportFormat { kJson, kCsv };

/// Byte-stable serialization: numbers use the shortest round-trip form and
/// runtime_ms is written only when include_timing is set (null otherwise).
std::string format_report(const VerificationReport& report, ReportFormat format,
                          bool include_timing = false);
VerificationReport parse_json_report(const std::string& text);

/// Fixed-width summary table for terminals.
void print_summary(std::ostream& out, const VerificationReport& report);

}  // namespace caplab
