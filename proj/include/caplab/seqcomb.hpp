#pragma once

// Combinatorics of capacity sequences c^1, c^2, ... and the product rules
// built from them.

#include <cstddef>
#include <string>
#include <vector>

#include "caplab/report.hpp"

namespace caplab {

/// c^1..c^K, positive and non-decreasing. at(0) is the convention c^0 = 0.
class CapacitySequence {
 public:
  CapacitySequence() = default;
  /// Throws InvalidInput on a nonpositive or decreasing entry.
  CapacitySequence(std::vector<double> values, std::string label = {});

  std::size_t size() const noexcept { return values_.size(); }
  double at(std::size_t k) const;
  const std::vector<double>& values() const noexcept { return values_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<double> values_;
  std::string label_;
};

/// r * ceil(k / d) for k = 1..count, the sequence of B^{2d}[r].
CapacitySequence ball_sequence(std::size_t d, double r, std::size_t count);

struct MergedTerm {
  double value = 0.0;
  std::string label;
  std::size_t index = 0;  // 1-based position in its source sequence
};

/// k-th smallest element (with repetitions) of the union, ties ordered by
/// (value, label, index). TruncationError when k exceeds the combined
/// length or the unseen tail of either sequence could still undercut M_k.
MergedTerm merged_term(const CapacitySequence& s1, const CapacitySequence& s2, std::size_t k);
double merged_sequence(const CapacitySequence& s1, const CapacitySequence& s2, std::size_t k);

/// Limit rule used at p = inf. kCartesianSum takes min_{i+j=k} c^i + c^j;
/// kPowerMeanMax takes min_{i+j=k} max(c^i, c^j).
enum class InfinityRule { kCartesianSum, kPowerMeanMax };

enum class CapacityBranch { kConvex, kConcave };

const char* to_string(InfinityRule r);
const char* to_string(CapacityBranch b);

/// Convex branch (p >= 2): min over i+j=k, i, j >= 0, of
/// (c1^i^e + c2^j^e)^(1/e) with e = p/(p-2) and c^0 = 0.
/// Concave branch (1 <= p <= 2): max over i+j=k+1, i, j >= 1.
/// p = 2 is the merged sequence in both branches.
double combine_capacity_sequences(const CapacitySequence& s1, const CapacitySequence& s2, double p,
                                  std::size_t k, CapacityBranch branch,
                                  InfinityRule rule = InfinityRule::kCartesianSum);

/// Branch chosen from p: convex for p >= 2, concave for 1 <= p < 2.
double conjecture_capacity_eval(const CapacitySequence& s1, const CapacitySequence& s2, double p,
                                std::size_t k, InfinityRule rule = InfinityRule::kCartesianSum);

/// Brute-force comparison of min_{i+j=k} max, max_{i+j=k+1} min and M_k for
/// k = 1..k_max. One row named `name`; computed is the largest discrepancy.
VerificationReport minmax_identity_audit(const CapacitySequence& s1, const CapacitySequence& s2,
                                         std::size_t k_max,
                                         const std::string& name = "appendix_lemma");

/// min over x in [0,1] of a x^{q/2} + b (1-x)^{q/2}.
double lemma_calculus_min(double a, double b, double q);

/// Compares the product rule for sX, sY against the sequence of B^{2(n+m)}[r]
/// for k <= k_max (default 2(n+m)). Rows "ball_audit.k=<k>" carry formula vs ball; at p = 2
/// rows "ball_audit.X.k=<k>" and "ball_audit.Y.k=<k>" compare the factors
/// with their own balls. The summary row "ball_audit" passes when the
/// outcome matches the theorem: some inconsistency for p != 2, none at p = 2.
VerificationReport ball_decomposition_audit(const CapacitySequence& sX, const CapacitySequence& sY,
                                            double p, std::size_t n, std::size_t m, double r,
                                            InfinityRule rule = InfinityRule::kCartesianSum,
                                            std::size_t k_max = 0);

}  // namespace caplab
