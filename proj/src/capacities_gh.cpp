#include "caplab/capacities_gh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "caplab/errors.hpp"
#include "caplab/numeric.hpp"

namespace caplab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

double support_at(const ToricProfile& profile, const std::vector<int>& v) {
  std::vector<double> x(v.begin(), v.end());
  return profile_support(profile, x);
}

double face_at(const ToricProfile& profile, const std::vector<int>& v) {
  std::vector<double> x(v.begin(), v.end());
  return profile_face_value(profile, x);
}

bool exhaustive(std::size_t n, std::size_t k) { return n <= kExhaustiveMaxN && k <= kExhaustiveMaxK; }

}  // namespace

CompositionStream::CompositionStream(std::size_t n, std::size_t k, bool strict)
    : n_(n), offset_(strict ? 1 : 0) {
  if (n == 0) throw InvalidInput("compositions: n must be positive");
  if (strict && k < n) {
    done_ = true;
    return;
  }
  inner_.assign(n, 0);
  inner_.back() = static_cast<int>(strict ? k - n : k);
}

bool CompositionStream::next() {
  if (done_) return false;
  if (started_) {
    int tail = inner_[n_ - 1];
    std::size_t i = n_ - 1;
    bool advanced = false;
    while (i-- > 0) {
      if (tail > 0) {
        ++inner_[i];
        std::fill(inner_.begin() + static_cast<std::ptrdiff_t>(i) + 1, inner_.end(), 0);
        inner_[n_ - 1] = tail - 1;
        advanced = true;
        break;
      }
      tail += inner_[i];
    }
    if (!advanced) {
      done_ = true;
      return false;
    }
  }
  started_ = true;
  current_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) current_[i] = inner_[i] + offset_;
  return true;
}

std::vector<std::vector<int>> enumerate_compositions(std::size_t n, std::size_t k, bool strict) {
  std::vector<std::vector<int>> out;
  CompositionStream stream(n, k, strict);
  while (stream.next()) out.push_back(stream.current());
  return out;
}

double gh_capacity_convex(const ToricProfile& profile, std::size_t k, std::vector<int>* witness) {
  if (!profile.is_convex()) throw WrongConvexity("gh_capacity_convex: profile is not convex-tagged");
  if (k == 0) throw InvalidInput("gh_capacity_convex: k must be positive");
  const std::size_t n = profile.n();
  double best = kInf;
  std::vector<int> arg;

  if (exhaustive(n, k)) {
    CompositionStream stream(n, k, false);
    while (stream.next()) {
      const double h = support_at(profile, stream.current());
      if (h < best) {
        best = h;
        arg = stream.current();
      }
    }
  } else {
    // h is monotone in each coordinate, so h(partial, 0, ..., 0) bounds every completion
    std::vector<int> v(n, 0);
    std::function<void(std::size_t, int)> descend = [&](std::size_t pos, int remaining) {
      if (pos == n - 1) {
        v[pos] = remaining;
        const double h = support_at(profile, v);
        if (h < best) {
          best = h;
          arg = v;
        }
        v[pos] = 0;
        return;
      }
      for (int x = 0; x <= remaining; ++x) {
        v[pos] = x;
        if (support_at(profile, v) >= best) break;
        descend(pos + 1, remaining - x);
      }
      v[pos] = 0;
    };
    descend(0, static_cast<int>(k));
  }
  if (witness) *witness = arg;
  return best;
}

double gh_capacity_concave(const ToricProfile& profile, std::size_t k, std::vector<int>* witness) {
  if (!profile.is_concave()) throw WrongConvexity("gh_capacity_concave: profile is not concave-tagged");
  if (k == 0) throw InvalidInput("gh_capacity_concave: k must be positive");
  const std::size_t n = profile.n();
  const std::size_t total = k + n - 1;
  double best = -kInf;
  std::vector<int> arg;

  if (exhaustive(n, k)) {
    CompositionStream stream(n, total, true);
    while (stream.next()) {
      const double f = face_at(profile, stream.current());
      if (f > best) {
        best = f;
        arg = stream.current();
      }
    }
  } else {
    // [v] is monotone, so filling every open slot with its largest value bounds completions
    std::vector<int> v(n, 1);
    std::function<void(std::size_t, int)> descend = [&](std::size_t pos, int remaining) {
      const int open = static_cast<int>(n - pos);
      if (open == 1) {
        v[pos] = remaining;
        const double f = face_at(profile, v);
        if (f > best) {
          best = f;
          arg = v;
        }
        return;
      }
      for (int x = 1; x <= remaining - (open - 1); ++x) {
        v[pos] = x;
        const int cap = remaining - x - (open - 2);
        for (std::size_t j = pos + 1; j < n; ++j) v[j] = cap;
        if (face_at(profile, v) > best) descend(pos + 1, remaining - x);
      }
      for (std::size_t j = pos; j < n; ++j) v[j] = 1;
    };
    descend(0, static_cast<int>(total));
  }
  if (witness) *witness = arg;
  return best;
}

double gh_capacity(const ToricProfile& profile, std::size_t k) {
  if (profile.is_convex()) return gh_capacity_convex(profile, k);
  if (profile.is_concave()) return gh_capacity_concave(profile, k);
  throw WrongConvexity("gh_capacity: profile " + profile.label() + " is neither convex nor concave");
}

CapacitySequence gh_capacity_sequence(const ToricProfile& profile, std::size_t k_max) {
  std::vector<double> values;
  values.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    double c = gh_capacity(profile, k);
    // absorb optimizer noise from generic profiles; real decreases still fail below
    if (!values.empty() && c < values.back() && values.back() - c <= 1e-9 * values.back()) {
      c = values.back();
    }
    values.push_back(c);
  }
  return CapacitySequence(std::move(values), profile.label());
}

double gh_p_product_formula(const CapacitySequence& c1, const CapacitySequence& c2, double p,
                            std::size_t k, CapacityBranch branch, InfinityRule rule) {
  return combine_capacity_sequences(c1, c2, p, k, branch, rule);
}

VerificationReport verify_gh_p_product(const ToricProfile& a, const ToricProfile& b, double p,
                                       std::size_t k_max, double tolerance,
                                       const std::string& name) {
  CapacityBranch branch;
  if (p >= 2.0 && a.is_convex() && b.is_convex()) {
    branch = CapacityBranch::kConvex;
  } else if (p <= 2.0 && a.is_concave() && b.is_concave()) {
    branch = CapacityBranch::kConcave;
  } else {
    throw WrongConvexity("verify_gh_p_product: convexity tags do not match p = " + fmt(p));
  }
  auto factor = [branch](const ToricProfile& f, std::size_t k_max) {
    std::vector<double> v;
    for (std::size_t k = 1; k <= k_max; ++k) {
      v.push_back(branch == CapacityBranch::kConvex ? gh_capacity_convex(f, k)
                                                    : gh_capacity_concave(f, k));
      if (v.size() > 1 && v.back() < v[v.size() - 2] && v[v.size() - 2] - v.back() <= 1e-9 * v.back()) {
        v.back() = v[v.size() - 2];
      }
    }
    return CapacitySequence(std::move(v), f.label());
  };
  const auto s1 = factor(a, k_max);
  const auto s2 = factor(b, k_max);
  const auto product = profile_p_product(a, b, p);

  double worst = 0.0;
  std::optional<std::string> witness;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double lattice = branch == CapacityBranch::kConvex ? gh_capacity_convex(product, k)
                                                             : gh_capacity_concave(product, k);
    const double formula = gh_p_product_formula(s1, s2, p, k, branch);
    const double dev = std::abs(lattice - formula) / std::max(std::abs(formula), 1e-300);
    if (!witness || dev > worst) {
      worst = dev;
      witness = "k=" + std::to_string(k) + ": lattice " + fmt(lattice) + " vs formula " + fmt(formula);
    }
  }
  VerificationReport report;
  report.checks.push_back(compare_check(name, worst, 0.0, tolerance, witness));
  return report;
}

CInfinityEstimate c_infinity_estimate(const std::function<double(std::size_t)>& capacity_at,
                                      std::size_t k_max) {
  if (k_max < 10) throw InvalidInput("c_infinity_estimate: k_max must be >= 10");
  CInfinityEstimate out;
  out.estimate = capacity_at(k_max) / static_cast<double>(k_max);
  out.tail_start = k_max / 10;
  const double head = capacity_at(out.tail_start) / static_cast<double>(out.tail_start);
  out.tail_change = out.estimate - head;
  out.tail_slope = out.tail_change / static_cast<double>(k_max - out.tail_start);
  return out;
}

double cube_capacity(const ToricProfile& profile) {
  const std::vector<double> ones(profile.n(), 1.0);
  return 1.0 / profile.gauge_plus(ones);
}

VerificationReport gh_monotonicity_audit(const ToricProfile& profile, std::size_t i_max,
                                         const std::string& name) {
  const std::size_t n = profile.n();
  std::vector<double> c(i_max + n + 1, 0.0);
  for (std::size_t k = 1; k <= i_max + n; ++k) c[k] = gh_capacity(profile, k);
  double smallest = kInf;
  std::optional<std::string> witness;
  for (std::size_t i = 1; i <= i_max; ++i) {
    const double gap = c[n + i] - c[i];
    if (gap < smallest) {
      smallest = gap;
      witness = "i=" + std::to_string(i) + ": c^i=" + fmt(c[i]) + " c^{n+i}=" + fmt(c[n + i]);
    }
  }
  CheckResult row;
  row.check = name;
  row.computed = smallest;
  row.expected = 0.0;
  row.tolerance = 0.0;
  row.status = smallest > 0.0 ? CheckStatus::kPass : CheckStatus::kFail;
  row.witness = witness;
  VerificationReport report;
  report.checks.push_back(std::move(row));
  return report;
}

}  // namespace caplab
