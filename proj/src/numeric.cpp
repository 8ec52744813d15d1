#include "caplab/numeric.hpp"

#include <algorithm>

namespace caplab {

double power_combine(double a, double b, double e) {
  if (std::isinf(e)) return e > 0 ? std::max(a, b) : std::min(a, b);
  if (e > 0) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (hi == 0.0) return 0.0;
    if (lo == 0.0) return hi;
    return hi * std::pow(1.0 + std::pow(lo / hi, e), 1.0 / e);
  }
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  if (lo == 0.0) return 0.0;
  // (hi/lo)^e <= 1 since e < 0
  return lo * std::pow(1.0 + std::pow(hi / lo, e), 1.0 / e);
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

ScalarExtremum golden(const std::function<double(double)>& f, double lo,
                      double hi, double tol, double sign) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = sign * f(c);
  double fd = sign * f(d);
  while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = sign * f(d);
    }
  }
  // endpoints matter for monotone objectives
  ScalarExtremum best{c, fc};
  if (fd > best.value) best = {d, fd};
  const double flo = sign * f(lo);
  const double fhi = sign * f(hi);
  if (flo > best.value) best = {lo, flo};
  if (fhi > best.value) best = {hi, fhi};
  best.value *= sign;
  return best;
}

}  // namespace

ScalarExtremum golden_section_max(const std::function<double(double)>& f,
                                  double lo, double hi, double tol) {
  return golden(f, lo, hi, tol, 1.0);
}

ScalarExtremum golden_section_min(const std::function<double(double)>& f,
                                  double lo, double hi, double tol) {
  return golden(f, lo, hi, tol, -1.0);
}

double gamma_ratio(double a, double b) {
  if (a + b + 1.0 < 170.0) {
    return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 1.0);
  }
  return std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 1.0));
}

}  // namespace caplab
