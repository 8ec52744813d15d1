// caplab: capacities, volumes and systolic ratios of convex bodies, plus the
// verification suite.
//
// Exit codes: 0 pass, 1 check failure, 2 usage or spec error, 3 invariant
// violation at load, 4 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "caplab/bodies.hpp"
#include "caplab/capacities_ehz.hpp"
#include "caplab/capacities_gh.hpp"
#include "caplab/errors.hpp"
#include "caplab/report.hpp"
#include "caplab/spec_io.hpp"
#include "caplab/suite.hpp"
#include "caplab/systolic.hpp"

namespace {

using namespace caplab;

struct Options {
  std::string spec;
  std::string format = "json";
  std::string out;
  std::string in;
  double p = 2.0;
  std::size_t k = 1;
  std::size_t kmax = 2000;
  std::size_t samples = 1000000;
  std::uint64_t seed = 42;
  bool timing = false;
  bool solver = false;
  std::vector<std::string> checks;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

CheckResult value_row(std::string name, double value, std::optional<std::string> witness = std::nullopt) {
  return compare_check(std::move(name), value, value, 0.0, std::move(witness));
}

int emit(const VerificationReport& report, const Options& o) {
  const auto format = o.format == "csv" ? ReportFormat::kCsv : ReportFormat::kJson;
  const std::string text = format_report(report, format, o.timing);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) throw IoError("cannot write '" + o.out + "'");
  }
  return report.passed() ? 0 : 1;
}

VerificationReport capacity_command(const Options& o) {
  const auto spec = load_body_spec(o.spec, 100, o.seed);
  VerificationReport report;
  const auto closed = ehz_closed_form(spec.body);
  if (closed) report.checks.push_back(value_row("c_ehz.closed_form", *closed, spec.body.label()));
  if (spec.profile && (spec.profile->is_convex() || spec.profile->is_concave())) {
    std::vector<int> witness;
    const double c = spec.profile->is_convex() ? gh_capacity_convex(*spec.profile, o.k, &witness)
                                               : gh_capacity_concave(*spec.profile, o.k, &witness);
    std::string w = "v=(";
    for (std::size_t i = 0; i < witness.size(); ++i) w += (i ? "," : "") + std::to_string(witness[i]);
    report.checks.push_back(value_row("c_gh.k=" + std::to_string(o.k), c, w + ")"));
  }
  if (spec.body.smooth() && (o.solver || !closed)) {
    SolverOptions options;
    options.p = o.p;
    options.seed = o.seed;
    ClarkeResult result;
    std::string note;
    try {
      result = clarke_dual_solve(spec.body, options);
    } catch (const NonConvergence& e) {
      result = e.best();
      note = "; not converged";
    }
    const std::string w = "gradient norm " + fmt(result.gradient_norm) + note;
    if (closed) {
      report.checks.push_back(compare_check("c_ehz.clarke", result.capacity, *closed, 0.02 * *closed, w));
    } else {
      auto row = value_row("c_ehz.clarke", result.capacity, w);
      if (!note.empty()) row.status = CheckStatus::kFail;
      report.checks.push_back(row);
    }
  }
  if (report.checks.empty()) {
    throw UnsupportedBody("no capacity route for " + spec.body.label() +
                          " (not toric, no closed form, not smooth)");
  }
  return report;
}

VerificationReport volume_command(const Options& o) {
  const auto spec = load_body_spec(o.spec, 100, o.seed);
  VerificationReport report;
  const auto& exact = spec.body.closed_form_volume();
  if (exact) report.checks.push_back(value_row("volume.closed_form", *exact, spec.body.label()));
  if (o.samples > 0) {
    const auto mc = volume_monte_carlo(spec.body, o.samples, o.seed);
    const std::string w = "standard error " + fmt(mc.standard_error) + ", " + std::to_string(mc.samples) + " samples";
    if (exact) {
      report.checks.push_back(compare_check("volume.monte_carlo", mc.mean, *exact, 4.0 * mc.standard_error, w));
    } else {
      report.checks.push_back(value_row("volume.monte_carlo", mc.mean, w));
    }
  }
  return report;
}

VerificationReport systolic_command(const Options& o) {
  const auto spec = load_body_spec(o.spec, 100, o.seed);
  if (!spec.body.is_symplectic()) throw InvalidInput("systolic: body dimension must be even");
  const std::size_t n = spec.body.half_dim();
  auto capacity = ehz_closed_form(spec.body);
  if (!capacity) {
    SolverOptions options;
    options.seed = o.seed;
    capacity = clarke_dual_solve(spec.body, options).capacity;
  }
  double volume;
  if (spec.body.closed_form_volume()) volume = *spec.body.closed_form_volume();
  else volume = volume_monte_carlo(spec.body, o.samples, o.seed).mean;

  VerificationReport report;
  const double sys = systolic_ratio(*capacity, volume, n);
  auto bound = compare_check("systolic.ratio", sys, 1.0, 0.0,
                             "c=" + fmt(*capacity) + " vol=" + fmt(volume) + " n=" + std::to_string(n));
  bound.status = sys <= 1.0 + 1e-12 ? CheckStatus::kPass : CheckStatus::kFail;
  report.checks.push_back(bound);

  const auto* product = spec.body.p_product();
  if (product && product->factors.size() == 2) {
    std::vector<SystolicData> data;
    for (const auto& f : product->factors) {
      auto c = ehz_closed_form(f);
      if (!c || !f.closed_form_volume()) break;
      data.push_back({*c, *f.closed_form_volume(), f.half_dim()});
    }
    if (data.size() == 2) report.append(p_product_systolic_check(data[0], data[1], product->p));
  }
  return report;
}

VerificationReport cinf_command(const Options& o) {
  const auto spec = load_body_spec(o.spec, 100, o.seed);
  if (!spec.profile) throw UnsupportedBody("cinf: " + spec.body.label() + " is not a toric domain");
  const auto& profile = *spec.profile;
  const auto est = c_infinity_estimate([&](std::size_t k) { return gh_capacity(profile, k); }, o.kmax);
  const double cube = cube_capacity(profile);
  VerificationReport report;
  report.checks.push_back(compare_check(
      "c_inf.estimate", est.estimate, cube, 2.0 * std::abs(est.tail_change) + 1e-12,
      "c^" + std::to_string(o.kmax) + "/" + std::to_string(o.kmax) + " against the cube capacity; tail slope " +
          fmt(est.tail_slope) + " from k=" + std::to_string(est.tail_start)));
  return report;
}

VerificationReport report_command(const Options& o) {
  std::ifstream in(o.in);
  if (!in) throw IoError("cannot read report '" + o.in + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_report(buf.str());
}

void add_output_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
  cmd->add_flag("--timing", o.timing, "include runtime_ms in the report");
  cmd->add_option("--seed", o.seed, "random seed");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"caplab: symplectic capacities of convex bodies and p-products"};
  app.require_subcommand(1);

  auto* capacity = app.add_subcommand("capacity", "EHZ and Gutt-Hutchings capacities of a body");
  capacity->add_option("--spec", o.spec, "body spec file or inline JSON")->required();
  capacity->add_option("--k", o.k, "index of the Gutt-Hutchings capacity")->check(CLI::PositiveNumber);
  capacity->add_option("--p", o.p, "exponent of the Clarke dual functional");
  capacity->add_flag("--solver", o.solver, "run the Clarke dual solver even when a closed form exists");
  add_output_flags(capacity, o);

  auto* volume = app.add_subcommand("volume", "closed-form and Monte Carlo volume");
  volume->add_option("--spec", o.spec, "body spec file or inline JSON")->required();
  volume->add_option("--samples", o.samples, "Monte Carlo samples (0 to skip)");
  add_output_flags(volume, o);

  auto* systolic = app.add_subcommand("systolic", "systolic ratio and the p-product inequality");
  systolic->add_option("--spec", o.spec, "body spec file or inline JSON")->required();
  systolic->add_option("--samples", o.samples, "Monte Carlo samples when no closed-form volume exists");
  add_output_flags(systolic, o);

  auto* cinf = app.add_subcommand("cinf", "c_inf estimate of a toric domain");
  cinf->add_option("--spec", o.spec, "body spec file or inline JSON")->required();
  cinf->add_option("--kmax", o.kmax, "largest capacity index")->check(CLI::Range(10, 1000000));
  add_output_flags(cinf, o);

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_option("--check", o.checks, "check names (default: all)");
  add_output_flags(verify, o);

  auto* report = app.add_subcommand("report", "re-emit a saved JSON report");
  report->add_option("--in", o.in, "JSON report to read")->required();
  add_output_flags(report, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    VerificationReport result;
    if (*capacity) result = capacity_command(o);
    else if (*volume) result = volume_command(o);
    else if (*systolic) result = systolic_command(o);
    else if (*cinf) result = cinf_command(o);
    else if (*report) result = report_command(o);
    else {
      result = run_verification_suite(o.checks, o.seed);
      print_summary(std::cerr, result);
    }
    return emit(result, o);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
