#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace caplab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hölder conjugate of p in [1, inf]: 1/p + 1/q = 1.
inline double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

/// (a^e + b^e)^(1/e) for a, b >= 0 and e != 0, evaluated without overflow.
/// e = +inf gives max, e = -inf gives min. For e > 0 a zero argument drops
/// out; for e < 0 a zero argument forces the result to zero.
double power_combine(double a, double b, double e);

/// Maximizer of a unimodal f on [lo, hi]; returns the best value seen.
struct ScalarExtremum {
  double argument;
  double value;
};

ScalarExtremum golden_section_max(const std::function<double(double)>& f,
                                  double lo, double hi, double tol = 1e-13);
ScalarExtremum golden_section_min(const std::function<double(double)>& f,
                                  double lo, double hi, double tol = 1e-13);

/// Γ(a+1)Γ(b+1)/Γ(a+b+1); tgamma for small arguments, log-Gamma otherwise.
double gamma_ratio(double a, double b);

}  // namespace caplab
