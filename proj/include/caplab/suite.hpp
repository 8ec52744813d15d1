#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "caplab/report.hpp"

namespace caplab {

/// thm1_2, prop1_4, thm1_6_convex, thm1_6_concave, thm1_7, appendix_lemma,
/// lemma_calculus, g_convexity, free_sum_remark, ball_audit, monotonicity.
const std::vector<std::string>& suite_check_names();

/// Runs the selected checks (all when empty) in parallel, one row per check,
/// rows sorted by name. InvalidInput on an unknown name.
VerificationReport run_verification_suite(const std::vector<std::string>& selection,
                                          std::uint64_t seed);

/// Single check by name.
CheckResult run_suite_check(const std::string& name, std::uint64_t seed);

}  // namespace caplab
