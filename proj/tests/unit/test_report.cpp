#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "caplab/numeric.hpp"
#include "caplab/report.hpp"

using namespace caplab;

namespace {

VerificationReport sample_report() {
  VerificationReport r;
  r.checks.push_back(compare_check("alpha", 1.0, 1.0 + 1e-13, 1e-12));
  r.checks.push_back(compare_check("beta", 2.0, 1.0, 0.5, std::string("off by \"one\", clearly")));
  r.checks.back().runtime_ms = 12.5;
  return r;
}

}  // namespace

TEST_CASE("compare_check applies the tolerance") {
  CHECK(compare_check("a", 1.0, 1.0, 0.0).passed());
  CHECK(compare_check("a", 1.1, 1.0, 0.2).passed());
  CHECK_FALSE(compare_check("a", 1.3, 1.0, 0.2).passed());
  CHECK_FALSE(compare_check("a", std::nan(""), 1.0, 0.2).passed());
}

TEST_CASE("report aggregation") {
  auto r = sample_report();
  CHECK_FALSE(r.passed());
  CHECK(r.find("alpha")->passed());
  CHECK(r.find("gamma") == nullptr);
  VerificationReport other;
  other.checks.push_back(compare_check("gamma", 0.0, 0.0, 0.0));
  r.append(other);
  CHECK(r.checks.size() == 3);
}

TEST_CASE("JSON report has the documented schema") {
  const auto text = format_report(sample_report(), ReportFormat::kJson);
  const auto j = nlohmann::json::parse(text);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  for (const auto& row : j) {
    CHECK(row.contains("check"));
    CHECK(row.contains("status"));
    CHECK(row.contains("computed"));
    CHECK(row.contains("expected"));
    CHECK(row.contains("tolerance"));
    CHECK(row.contains("runtime_ms"));
    CHECK(row["runtime_ms"].is_null());
  }
  CHECK(j[0]["status"] == "pass");
  CHECK(j[1]["status"] == "fail");
  CHECK_FALSE(j[0].contains("witness"));
  CHECK(j[1]["witness"] == "off by \"one\", clearly");
  const auto timed = nlohmann::json::parse(format_report(sample_report(), ReportFormat::kJson, true));
  CHECK(timed[1]["runtime_ms"] == 12.5);
}

TEST_CASE("JSON report round trips") {
  auto original = sample_report();
  original.checks.push_back(compare_check("inf", kInf, kInf, 0.0));
  const auto back = parse_json_report(format_report(original, ReportFormat::kJson, true));
  REQUIRE(back.checks.size() == 3);
  CHECK(back.checks[0].computed == original.checks[0].computed);
  CHECK(back.checks[0].expected == original.checks[0].expected);
  CHECK(back.checks[1].witness == original.checks[1].witness);
  CHECK(back.checks[1].runtime_ms == original.checks[1].runtime_ms);
  CHECK(back.checks[1].status == CheckStatus::kFail);
  CHECK(std::isinf(back.checks[2].computed));
  CHECK(format_report(back, ReportFormat::kJson, true) == format_report(original, ReportFormat::kJson, true));
}

TEST_CASE("CSV report") {
  const auto text = format_report(sample_report(), ReportFormat::kCsv);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == "check,status,computed,expected,tolerance,witness,runtime_ms");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 2);
  CHECK(text.find("\"off by \"\"one\"\", clearly\"") != std::string::npos);
}

TEST_CASE("formatting is byte-stable") {
  CHECK(format_report(sample_report(), ReportFormat::kJson) == format_report(sample_report(), ReportFormat::kJson));
  CHECK(format_report(sample_report(), ReportFormat::kCsv) == format_report(sample_report(), ReportFormat::kCsv));
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS(parse_json_report("not json"));
  CHECK_THROWS(parse_json_report("[{\"check\": 1}]"));
}
