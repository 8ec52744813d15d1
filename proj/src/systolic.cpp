#include "caplab/systolic.hpp"

#include <array>
#include <cmath>
#include <cstdio>

#include "caplab/capacities_ehz.hpp"
#include "caplab/errors.hpp"
#include "caplab/numeric.hpp"

namespace caplab {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Capacity and log-volume; volumes of iterated products leave double range.
struct LogData {
  double capacity;
  double log_volume;
  std::size_t half_dim;
};

double log_gamma_ratio(double a, double b) {
  return std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 1.0);
}

LogData log_product(const LogData& k, const LogData& t, double p) {
  const std::array<double, 2> c{k.capacity, t.capacity};
  LogData out;
  out.capacity = ehz_p_product(c, p);
  out.half_dim = k.half_dim + t.half_dim;
  out.log_volume = k.log_volume + t.log_volume;
  if (std::isfinite(p)) {
    out.log_volume += log_gamma_ratio(2.0 * static_cast<double>(k.half_dim) / p,
                                      2.0 * static_cast<double>(t.half_dim) / p);
  }
  return out;
}

// n ln sys_n = n ln c - ln(n! V)
double log_sys_power(const LogData& d) {
  const double n = static_cast<double>(d.half_dim);
  return n * std::log(d.capacity) - std::lgamma(n + 1.0) - d.log_volume;
}

LogData to_log(const SystolicData& d) {
  if (!(d.capacity > 0.0) || !(d.volume > 0.0) || d.half_dim == 0) {
    throw InvalidInput("systolic data must be positive");
  }
  return {d.capacity, std::log(d.volume), d.half_dim};
}

}  // namespace

double systolic_ratio(double capacity, double volume, std::size_t n) {
  if (!(capacity > 0.0) || !(volume > 0.0) || n == 0) {
    throw InvalidInput("systolic_ratio: inputs must be positive");
  }
  const double nd = static_cast<double>(n);
  return capacity / std::exp((std::lgamma(nd + 1.0) + std::log(volume)) / nd);
}

SystolicData p_product_data(const SystolicData& k, const SystolicData& t, double p) {
  const auto d = log_product(to_log(k), to_log(t), p);
  return {d.capacity, std::exp(d.log_volume), d.half_dim};
}

VerificationReport p_product_systolic_check(const SystolicData& k, const SystolicData& t, double p,
                                            const std::string& name) {
  const LogData lk = to_log(k), lt = to_log(t);
  const double log_lhs = log_sys_power(log_product(lk, lt, p));
  const double log_rhs = log_sys_power(lk) + log_sys_power(lt);
  const double diff = log_lhs - log_rhs;
  const double ratio = std::exp(diff);
  constexpr double kTol = 1e-12;
  const bool equal_caps = std::abs(k.capacity - t.capacity) <= kTol * std::max(k.capacity, t.capacity);
  const bool equality_expected = p == 2.0 && equal_caps;
  const bool equality_seen = std::abs(diff) <= kTol;
  CheckResult row;
  row.check = name;
  row.computed = ratio;
  row.expected = 1.0;
  row.tolerance = kTol;
  row.status = diff <= kTol && equality_seen == equality_expected ? CheckStatus::kPass : CheckStatus::kFail;
  row.witness = "p=" + fmt(p) + " c(K)=" + fmt(k.capacity) + " c(T)=" + fmt(t.capacity) +
                " n=" + std::to_string(k.half_dim) + " m=" + std::to_string(t.half_dim) +
                " equality=" + (equality_seen ? "yes" : "no");
  VerificationReport report;
  report.checks.push_back(std::move(row));
  return report;
}

double free_sum_ratio(std::size_t n) {
  if (n == 0) throw InvalidInput("free_sum_ratio: n must be positive");
  const double nd = static_cast<double>(n);
  return nd / (nd + 1.0) * std::pow(2.0 * nd + 1.0, 1.0 / (nd + 1.0));
}

double free_sum_ratio_from_products(std::size_t n) {
  if (n == 0) throw InvalidInput("free_sum_ratio: n must be positive");
  const double nd = static_cast<double>(n);
  const LogData ball{1.0, -std::lgamma(nd + 1.0), n};  // B^{2n}[1]
  const LogData disc{nd, std::log(nd), 1};            // B^2[n]
  const auto free_sum = log_product(ball, disc, 1.0);
  const auto euclid = log_product(ball, disc, 2.0);
  const double d = nd + 1.0;
  return std::exp((log_sys_power(free_sum) - log_sys_power(euclid)) / d);
}

double g_function(double x, std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw InvalidInput("g_function: n and m must be positive");
  const double nd = static_cast<double>(n), md = static_cast<double>(m);
  const double base = (nd + md) * std::log(nd + md) - md * std::log(md) - nd * std::log(nd);
  const double log_g = (1.0 - 2.0 * x) * base + std::lgamma(1.0 + (2.0 * nd + 2.0 * md) * x) -
                       std::lgamma(1.0 + 2.0 * nd * x) - std::lgamma(1.0 + 2.0 * md * x) +
                       std::lgamma(nd + 1.0) + std::lgamma(md + 1.0) - std::lgamma(nd + md + 1.0);
  return std::exp(log_g);
}

VerificationReport g_logconvexity_audit(std::size_t n, std::size_t m, std::size_t grid,
                                        const std::string& name) {
  if (grid < 3) throw InvalidInput("g_logconvexity_audit: grid must have at least 3 points");
  std::vector<double> log_g(grid);
  double max_g = 0.0;
  double arg_max = 0.5;
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = 0.5 + 0.5 * static_cast<double>(i) / static_cast<double>(grid - 1);
    const double g = g_function(x, n, m);
    log_g[i] = std::log(g);
    if (g > max_g) {
      max_g = g;
      arg_max = x;
    }
  }
  double smallest = kInf;
  std::size_t where = 1;
  for (std::size_t i = 1; i + 1 < grid; ++i) {
    const double d2 = log_g[i - 1] - 2.0 * log_g[i] + log_g[i + 1];
    if (d2 < smallest) {
      smallest = d2;
      where = i;
    }
  }
  const std::string tag = " n=" + std::to_string(n) + " m=" + std::to_string(m);
  VerificationReport report;
  CheckResult convex;
  convex.check = name + ".second_difference";
  convex.computed = smallest;
  convex.expected = 0.0;
  convex.tolerance = 0.0;
  convex.status = smallest > 0.0 ? CheckStatus::kPass : CheckStatus::kFail;
  convex.witness = "smallest at grid index " + std::to_string(where) + tag;
  report.checks.push_back(std::move(convex));
  report.checks.push_back(compare_check(name + ".max_at_half", max_g, 1.0, 1e-12,
                                        "argmax x=" + fmt(arg_max) + tag));
  const double g1 = g_function(1.0, n, m);
  CheckResult below;
  below.check = name + ".g1";
  below.computed = g1;
  below.expected = 1.0;
  below.tolerance = 0.0;
  below.status = g1 < 1.0 ? CheckStatus::kPass : CheckStatus::kFail;
  below.witness = "g(1)" + tag;
  report.checks.push_back(std::move(below));
  return report;
}

TensorPowerDemo tensor_power_demo(double sys_value, std::size_t n, std::size_t m_powers) {
  if (!(sys_value > 0.0) || n == 0 || m_powers == 0) {
    throw InvalidInput("tensor_power_demo: inputs must be positive");
  }
  const double nd = static_cast<double>(n);
  // c = 1 and n! V = sys^{-n}
  const LogData body{1.0, -nd * std::log(sys_value) - std::lgamma(nd + 1.0), n};
  TensorPowerDemo demo;
  LogData power = body;
  for (std::size_t k = 1; k <= m_powers; ++k) {
    if (k > 1) power = log_product(power, body, 2.0);
    demo.ratios.push_back(std::exp(log_sys_power(power) / static_cast<double>(power.half_dim)));
  }
  const LogData ball{body.capacity, nd * std::log(body.capacity) - std::lgamma(nd + 1.0), n};
  demo.padding_lhs = std::exp(log_sys_power(body));
  demo.padding_rhs = std::exp(log_sys_power(log_product(body, ball, 2.0)));
  return demo;
}

}  // namespace caplab
