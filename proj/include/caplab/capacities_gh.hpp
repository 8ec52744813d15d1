#pragma once

// Gutt-Hutchings capacities of convex and concave toric domains.

#include <cstddef>
#include <functional>
#include <vector>

#include "caplab/report.hpp"
#include "caplab/seqcomb.hpp"
#include "caplab/toric.hpp"

namespace caplab {

/// Lexicographic stream of v in N^n with sum k (strict: all v_i >= 1).
/// A strict request with k < n yields nothing.
class CompositionStream {
 public:
  CompositionStream(std::size_t n, std::size_t k, bool strict);

  /// Advances to the next composition; false once exhausted.
  bool next();
  const std::vector<int>& current() const noexcept { return current_; }

 private:
  std::size_t n_;
  int offset_;
  bool started_ = false;
  bool done_ = false;
  std::vector<int> inner_;
  std::vector<int> current_;
};

std::vector<std::vector<int>> enumerate_compositions(std::size_t n, std::size_t k, bool strict);

/// Beyond this size the enumeration switches to branch and bound.
inline constexpr std::size_t kExhaustiveMaxN = 6;
inline constexpr std::size_t kExhaustiveMaxK = 30;

/// min h_Omega(v) over v in N^n, sum v = k. Throws WrongConvexity unless the
/// profile is convex-tagged. witness (optional) receives a minimizer.
double gh_capacity_convex(const ToricProfile& profile, std::size_t k,
                          std::vector<int>* witness = nullptr);
/// max [v]_Omega over v in N^n_{>0}, sum v = k + n - 1.
double gh_capacity_concave(const ToricProfile& profile, std::size_t k,
                           std::vector<int>* witness = nullptr);

/// Convex formula for convex-tagged profiles, concave formula otherwise.
double gh_capacity(const ToricProfile& profile, std::size_t k);
CapacitySequence gh_capacity_sequence(const ToricProfile& profile, std::size_t k_max);

/// Capacity of K x_p T from the factor sequences. Requires p >= 2 for the
/// convex branch and 1 <= p <= 2 for the concave one (InvalidInput).
double gh_p_product_formula(const CapacitySequence& c1, const CapacitySequence& c2, double p,
                            std::size_t k, CapacityBranch branch,
                            InfinityRule rule = InfinityRule::kCartesianSum);

/// Lattice capacities of profile_p_product(a, b, p) against the formula on
/// the factor sequences, k = 1..k_max. One row named `name` whose computed
/// value is the largest relative deviation.
VerificationReport verify_gh_p_product(const ToricProfile& a, const ToricProfile& b, double p,
                                       std::size_t k_max, double tolerance,
                                       const std::string& name = "gh_p_product");

struct CInfinityEstimate {
  double estimate = 0.0;     // c^{k_max} / k_max
  std::size_t tail_start = 0;
  double tail_change = 0.0;  // c^{k_max}/k_max - c^{k0}/k0
  double tail_slope = 0.0;   // tail_change / (k_max - k0)
};

/// k_max >= 10. The tail runs over the last decade [k_max/10, k_max].
CInfinityEstimate c_infinity_estimate(const std::function<double(std::size_t)>& capacity_at,
                                      std::size_t k_max);

/// 1 / ||(1, ..., 1)||_Omega.
double cube_capacity(const ToricProfile& profile);

/// Strict c^i < c^{n+i} for i = 1..i_max. One row named `name`; computed is
/// the smallest gap c^{n+i} - c^i.
VerificationReport gh_monotonicity_audit(const ToricProfile& profile, std::size_t i_max,
                                         const std::string& name = "monotonicity");

}  // namespace caplab
