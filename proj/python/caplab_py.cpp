#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "caplab/bodies.hpp"
#include "caplab/capacities_ehz.hpp"
#include "caplab/capacities_gh.hpp"
#include "caplab/errors.hpp"
#include "caplab/report.hpp"
#include "caplab/seqcomb.hpp"
#include "caplab/spec_io.hpp"
#include "caplab/suite.hpp"
#include "caplab/systolic.hpp"
#include "caplab/toric.hpp"

namespace py = pybind11;
using namespace caplab;

namespace {

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw InvalidInput("unknown report format '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_caplab, m) {
  m.doc() = "Symplectic capacities of convex bodies and their p-products";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidSpec>(m, "InvalidSpec", error.ptr());
  py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<UnsupportedBody>(m, "UnsupportedBody", error.ptr());
  py::register_exception<WrongConvexity>(m, "WrongConvexity", error.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", error.ptr());
  py::register_exception<UndefinedGluing>(m, "UndefinedGluing", error.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<NonConvergence>(m, "NonConvergence", error.ptr());

  py::class_<BodyOracle>(m, "Body")
      .def_property_readonly("dim", &BodyOracle::dim)
      .def_property_readonly("label", &BodyOracle::label)
      .def_property_readonly("kind", [](const BodyOracle& b) { return std::string(to_string(b.kind())); })
      .def_property_readonly("smooth", &BodyOracle::smooth)
      .def_property_readonly("closed_form_volume", &BodyOracle::closed_form_volume)
      .def("gauge", [](const BodyOracle& b, const std::vector<double>& x) { return b.gauge(x); })
      .def("support", [](const BodyOracle& b, const std::vector<double>& u) { return b.support(u); })
      .def("__repr__", [](const BodyOracle& b) { return "<Body " + b.label() + ">"; });

  py::class_<ToricProfile>(m, "ToricProfile")
      .def_property_readonly("n", &ToricProfile::n)
      .def_property_readonly("label", &ToricProfile::label)
      .def_property_readonly("is_convex", &ToricProfile::is_convex)
      .def_property_readonly("is_concave", &ToricProfile::is_concave)
      .def("gauge_plus", [](const ToricProfile& p, const std::vector<double>& x) { return p.gauge_plus(x); })
      .def("__repr__", [](const ToricProfile& p) { return "<ToricProfile " + p.label() + ">"; });

  m.def("ball", &make_ball, py::arg("half_dim"), py::arg("capacity") = 1.0);
  m.def("ellipsoid", &make_ellipsoid, py::arg("a"));
  m.def("polydisc", &make_polydisc, py::arg("a"));
  m.def("box", &make_box, py::arg("half_widths"));
  m.def("p_product", [](double p, std::vector<BodyOracle> factors) {
    return make_p_product({p, std::move(factors)});
  }, py::arg("p"), py::arg("factors"));
  m.def("simplex_profile", &make_simplex_profile, py::arg("a"));
  m.def("box_profile", &make_box_profile, py::arg("a"));
  m.def("lp_profile", &make_lp_profile, py::arg("power"), py::arg("radii"));
  m.def("profile_p_product", &profile_p_product, py::arg("a"), py::arg("b"), py::arg("p"));
  m.def("toric_body", &toric_body, py::arg("profile"));
  m.def("load_spec", [](const std::string& source, std::uint64_t seed) {
    auto loaded = load_body_spec(source, 100, seed);
    return py::make_tuple(loaded.body, loaded.profile);
  }, py::arg("source"), py::arg("seed") = 0);

  py::class_<VolumeEstimate>(m, "VolumeEstimate")
      .def_readonly("mean", &VolumeEstimate::mean)
      .def_readonly("standard_error", &VolumeEstimate::standard_error)
      .def_readonly("samples", &VolumeEstimate::samples);
  m.def("volume_monte_carlo", &volume_monte_carlo, py::arg("body"), py::arg("samples"),
        py::arg("seed") = 0);

  m.def("ehz_closed_form", &ehz_closed_form, py::arg("body"));
  m.def("ehz_p_product", [](const std::vector<double>& c, double p) { return ehz_p_product(c, p); },
        py::arg("capacities"), py::arg("p"));
  m.def("glue_period", &glue_period, py::arg("t1"), py::arg("t2"), py::arg("p"));

  py::class_<ClarkeResult>(m, "ClarkeResult")
      .def_readonly("capacity", &ClarkeResult::capacity)
      .def_readonly("functional", &ClarkeResult::functional)
      .def_readonly("gradient_norm", &ClarkeResult::gradient_norm)
      .def_readonly("iterations", &ClarkeResult::iterations)
      .def_readonly("converged_restarts", &ClarkeResult::converged_restarts);
  m.def("ehz_capacity", [](const BodyOracle& body, double p, std::size_t modes, std::size_t samples,
                           std::size_t restarts, std::uint64_t seed) {
    SolverOptions options;
    options.p = p;
    options.modes = modes;
    options.samples = samples;
    options.restarts = restarts;
    options.seed = seed;
    py::gil_scoped_release release;
    return clarke_dual_solve(body, options);
  }, py::arg("body"), py::arg("p") = 2.0, py::arg("modes") = 12, py::arg("samples") = 1024,
     py::arg("restarts") = 20, py::arg("seed") = 0);

  m.def("gh_capacity", [](const ToricProfile& profile, std::size_t k) {
    py::gil_scoped_release release;
    return gh_capacity(profile, k);
  }, py::arg("profile"), py::arg("k"));
  m.def("gh_capacity_sequence", [](const ToricProfile& profile, std::size_t k_max) {
    py::gil_scoped_release release;
    return gh_capacity_sequence(profile, k_max).values();
  }, py::arg("profile"), py::arg("k_max"));
  m.def("cube_capacity", &cube_capacity, py::arg("profile"));

  m.def("systolic_ratio", &systolic_ratio, py::arg("capacity"), py::arg("volume"), py::arg("n"));
  m.def("free_sum_ratio", &free_sum_ratio, py::arg("n"));
  m.def("g_function", &g_function, py::arg("x"), py::arg("n"), py::arg("m"));

  m.def("merged_sequence", [](const std::vector<double>& a, const std::vector<double>& b, std::size_t k) {
    return merged_sequence(CapacitySequence(a, "a"), CapacitySequence(b, "b"), k);
  }, py::arg("a"), py::arg("b"), py::arg("k"));
  m.def("capacity_product_rule", [](const std::vector<double>& a, const std::vector<double>& b, double p,
                                    std::size_t k) {
    return conjecture_capacity_eval(CapacitySequence(a, "a"), CapacitySequence(b, "b"), p, k);
  }, py::arg("a"), py::arg("b"), py::arg("p"), py::arg("k"));
  m.def("lemma_calculus_min", &lemma_calculus_min, py::arg("a"), py::arg("b"), py::arg("q"));

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("check", &CheckResult::check)
      .def_property_readonly("status", [](const CheckResult& c) { return std::string(to_string(c.status)); })
      .def_readonly("computed", &CheckResult::computed)
      .def_readonly("expected", &CheckResult::expected)
      .def_readonly("tolerance", &CheckResult::tolerance)
      .def_readonly("witness", &CheckResult::witness)
      .def_readonly("runtime_ms", &CheckResult::runtime_ms)
      .def_property_readonly("passed", &CheckResult::passed);
  py::class_<VerificationReport>(m, "Report")
      .def_readonly("checks", &VerificationReport::checks)
      .def_property_readonly("passed", &VerificationReport::passed)
      .def("format", [](const VerificationReport& r, const std::string& fmt, bool timing) {
        return format_report(r, parse_format(fmt), timing);
      }, py::arg("format") = "json", py::arg("timing") = false);

  m.def("check_names", &suite_check_names);
  m.def("verify", [](const std::vector<std::string>& checks, std::uint64_t seed) {
    py::gil_scoped_release release;
    return run_verification_suite(checks, seed);
  }, py::arg("checks") = std::vector<std::string>{}, py::arg("seed") = 0);
  m.def("parse_report", &parse_json_report, py::arg("text"));
}
