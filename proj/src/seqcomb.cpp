#include "caplab/seqcomb.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <tuple>

#include "caplab/errors.hpp"
#include "caplab/numeric.hpp"

namespace caplab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

CapacitySequence::CapacitySequence(std::vector<double> values, std::string label)
    : values_(std::move(values)), label_(std::move(label)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(values_[i] > 0.0) || !std::isfinite(values_[i])) {
      throw InvalidInput("capacity sequence: entry " + std::to_string(i + 1) + " is not positive");
    }
    if (i > 0 && values_[i] < values_[i - 1]) {
      throw InvalidInput("capacity sequence: entry " + std::to_string(i + 1) + " decreases");
    }
  }
}

double CapacitySequence::at(std::size_t k) const {
  if (k == 0) return 0.0;
  if (k > values_.size()) {
    throw TruncationError("capacity sequence '" + label_ + "' has no term " + std::to_string(k));
  }
  return values_[k - 1];
}

CapacitySequence ball_sequence(std::size_t d, double r, std::size_t count) {
  if (d == 0) throw InvalidInput("ball_sequence: dimension must be positive");
  std::vector<double> v(count);
  for (std::size_t k = 1; k <= count; ++k) v[k - 1] = r * static_cast<double>((k + d - 1) / d);
  return CapacitySequence(std::move(v), "B^" + std::to_string(2 * d) + "[" + fmt(r) + "]");
}

const char* to_string(InfinityRule r) {
  return r == InfinityRule::kCartesianSum ? "cartesian_sum" : "power_mean_max";
}

const char* to_string(CapacityBranch b) { return b == CapacityBranch::kConvex ? "convex" : "concave"; }

MergedTerm merged_term(const CapacitySequence& s1, const CapacitySequence& s2, std::size_t k) {
  if (k == 0) throw InvalidInput("merged_sequence: k must be positive");
  if (s1.size() == 0 || s2.size() == 0 || k > s1.size() + s2.size()) {
    throw TruncationError("merged_sequence: sequences too short for k = " + std::to_string(k));
  }
  auto key = [](const CapacitySequence& s, std::size_t i, int which) {
    return std::make_tuple(s.values()[i], std::cref(s.label()), i, which);
  };
  std::size_t i = 0, j = 0;
  MergedTerm term;
  for (std::size_t step = 0; step < k; ++step) {
    bool take_first;
    if (i == s1.size()) take_first = false;
    else if (j == s2.size()) take_first = true;
    else take_first = key(s1, i, 0) < key(s2, j, 1);
    if (take_first) {
      term = {s1.values()[i], s1.label(), i + 1};
      ++i;
    } else {
      term = {s2.values()[j], s2.label(), j + 1};
      ++j;
    }
  }
  if (term.value > s1.values().back() || term.value > s2.values().back()) {
    throw TruncationError("merged_sequence: term " + std::to_string(k) +
                          " depends on entries beyond the supplied sequences");
  }
  return term;
}

double merged_sequence(const CapacitySequence& s1, const CapacitySequence& s2, std::size_t k) {
  return merged_term(s1, s2, k).value;
}

double combine_capacity_sequences(const CapacitySequence& s1, const CapacitySequence& s2, double p,
                                  std::size_t k, CapacityBranch branch, InfinityRule rule) {
  if (!(p >= 1.0)) throw InvalidInput("capacity product rule: p must be >= 1");
  if (k == 0) throw InvalidInput("capacity product rule: k must be positive");
  if (branch == CapacityBranch::kConvex && p < 2.0) {
    throw InvalidInput("convex branch requires p >= 2");
  }
  if (branch == CapacityBranch::kConcave && p > 2.0) {
    throw InvalidInput("concave branch requires 1 <= p <= 2");
  }
  if (p == 2.0) return merged_sequence(s1, s2, k);
  if (s1.size() < k || s2.size() < k) {
    throw TruncationError("capacity product rule: sequences need " + std::to_string(k) + " terms");
  }

  if (branch == CapacityBranch::kConvex) {
    double e;
    if (std::isinf(p)) e = rule == InfinityRule::kCartesianSum ? 1.0 : kInf;
    else e = p / (p - 2.0);
    double best = kInf;
    for (std::size_t i = 0; i <= k; ++i) best = std::min(best, power_combine(s1.at(i), s2.at(k - i), e));
    return best;
  }
  const double e = p / (p - 2.0);
  double best = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    best = std::max(best, power_combine(s1.at(i), s2.at(k + 1 - i), e));
  }
  return best;
}

double conjecture_capacity_eval(const CapacitySequence& s1, const CapacitySequence& s2, double p,
                                std::size_t k, InfinityRule rule) {
  if (!(p >= 1.0)) throw InvalidInput("conjecture_capacity_eval: p must be >= 1");
  return combine_capacity_sequences(s1, s2, p, k,
                                    p >= 2.0 ? CapacityBranch::kConvex : CapacityBranch::kConcave,
                                    rule);
}

VerificationReport minmax_identity_audit(const CapacitySequence& s1, const CapacitySequence& s2,
                                         std::size_t k_max, const std::string& name) {
  double worst = 0.0;
  std::optional<std::string> witness;
  for (std::size_t k = 1; k <= k_max; ++k) {
    double minmax = kInf;
    for (std::size_t i = 0; i <= k; ++i) minmax = std::min(minmax, std::max(s1.at(i), s2.at(k - i)));
    double maxmin = 0.0;
    for (std::size_t i = 1; i <= k; ++i) maxmin = std::max(maxmin, std::min(s1.at(i), s2.at(k + 1 - i)));
    const double merged = merged_sequence(s1, s2, k);
    const double gap = std::max(std::abs(minmax - merged), std::abs(maxmin - merged));
    if (gap > worst) {
      worst = gap;
      witness = "k=" + std::to_string(k) + ": minmax=" + fmt(minmax) + " maxmin=" + fmt(maxmin) +
                " merged=" + fmt(merged);
    }
  }
  VerificationReport report;
  report.checks.push_back(compare_check(name, worst, 0.0, 0.0, witness));
  return report;
}

double lemma_calculus_min(double a, double b, double q) {
  if (!(q >= 1.0)) throw InvalidInput("lemma_calculus_min: q must be >= 1");
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("lemma_calculus_min: a, b must be positive");
  if (q <= 2.0) return std::min(a, b);
  return power_combine(a, b, 2.0 / (2.0 - q));
}

VerificationReport ball_decomposition_audit(const CapacitySequence& sX, const CapacitySequence& sY,
                                            double p, std::size_t n, std::size_t m, double r,
                                            InfinityRule rule, std::size_t k_max) {
  const std::size_t d = n + m;
  const std::size_t count = k_max == 0 ? 2 * d : k_max;
  if (sX.size() < count || sY.size() < count) {
    throw TruncationError("ball_decomposition_audit: sequences need " + std::to_string(count) +
                          " terms");
  }
  VerificationReport report;
  std::size_t inconsistent = 0;
  std::optional<std::string> first;
  auto record = [&](const std::string& name, double computed, double expected) {
    auto row = compare_check(name, computed, expected, 1e-12 * std::max(1.0, std::abs(expected)),
                             "formula " + fmt(computed) + " vs ball " + fmt(expected));
    if (!row.passed()) {
      ++inconsistent;
      if (!first) first = name + ": " + *row.witness;
    }
    report.checks.push_back(std::move(row));
  };

  const auto ball = ball_sequence(d, r, count);
  for (std::size_t k = 1; k <= count; ++k) {
    record("ball_audit.k=" + std::to_string(k), conjecture_capacity_eval(sX, sY, p, k, rule),
           ball.at(k));
  }
  if (p == 2.0) {
    const auto bx = ball_sequence(n, r, count);
    const auto by = ball_sequence(m, r, count);
    for (std::size_t k = 1; k <= count; ++k) record("ball_audit.X.k=" + std::to_string(k), sX.at(k), bx.at(k));
    for (std::size_t k = 1; k <= count; ++k) record("ball_audit.Y.k=" + std::to_string(k), sY.at(k), by.at(k));
  }

  CheckResult summary;
  summary.check = "ball_audit";
  summary.computed = static_cast<double>(inconsistent);
  summary.expected = p == 2.0 ? 0.0 : 1.0;
  summary.tolerance = 0.0;
  summary.status = (p == 2.0) == (inconsistent == 0) ? CheckStatus::kPass : CheckStatus::kFail;
  summary.witness = first;
  report.checks.insert(report.checks.begin(), std::move(summary));
  return report;
}

}  // namespace caplab
