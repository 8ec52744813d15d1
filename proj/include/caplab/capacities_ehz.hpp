#pragma once

// EHZ capacity: closed-form product rule, characteristic gluing, and the
// Clarke dual action principle on truncated Fourier loops.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "caplab/bodies.hpp"
#include "caplab/errors.hpp"

namespace caplab {

/// min of the values for p >= 2, (sum c_i^e)^(1/e) with e = p/(p-2) for
/// 1 <= p < 2 (folded left to right).
double ehz_p_product(ConstVec c_values, double p);

/// Period of the glued characteristic, (t1^e + t2^e)^(1/e) with e = p/(p-2).
/// Throws UndefinedGluing at p = 2.
double glue_period(double t1, double t2, double p);

/// Closed-form EHZ capacity: constructor hints (ball, ellipsoid, polydisc,
/// box, toric) propagated through p-products; nullopt otherwise.
std::optional<double> ehz_closed_form(const BodyOracle& body);

/// z(t) = sum_{j=1..N} A_j cos(jt) + B_j sin(jt) in R^dim; zero mean by
/// construction. A_j occupies cos_coeffs[(j-1)*dim .. j*dim).
struct LoopConfiguration {
  std::size_t dim = 0;
  std::size_t modes = 0;
  std::vector<double> cos_coeffs;
  std::vector<double> sin_coeffs;

  LoopConfiguration() = default;
  LoopConfiguration(std::size_t dim, std::size_t modes);

  /// Single-mode circle of the given signed area in the (q_i, p_i) plane.
  static LoopConfiguration circle(std::size_t dim, std::size_t modes, double area,
                                  std::size_t plane = 0);

  void position(double t, MutVec out) const;
  void velocity(double t, MutVec out) const;
  void scale(double factor);
};

/// Integral of lambda = (q dp - p dq)/2, i.e. pi sum_j j <J A_j, B_j>.
double action(const LoopConfiguration& z);

/// (1/2pi) int h_K(zdot)^p dt by the trapezoid rule on `samples` points.
/// UnsupportedBody unless the body is smooth-tagged; samples must be a
/// power of two.
double clarke_objective(const BodyOracle& body, const LoopConfiguration& z, double p,
                        std::size_t samples);

/// F(z) = A(z)^(-p/2) clarke_objective(z) and its gradient with respect to
/// (cos_coeffs, sin_coeffs) concatenated. InvalidInput if A(z) <= 0.
double clarke_functional(const BodyOracle& body, const LoopConfiguration& z, double p,
                         std::size_t samples, std::vector<double>* gradient = nullptr);

struct SolverOptions {
  double p = 2.0;
  std::size_t modes = 12;
  std::size_t samples = 1024;
  std::size_t restarts = 20;
  std::size_t max_iterations = 10000;
  double gradient_tolerance = 1e-8;
  std::uint64_t seed = 0;
};

struct ClarkeResult {
  double capacity = 0.0;
  /// Minimizing loop rescaled to A(z) = 1.
  LoopConfiguration loop;
  double functional = 0.0;
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  std::size_t converged_restarts = 0;
};

/// Raised when no restart reaches the gradient tolerance; carries the best
/// result found.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, ClarkeResult best)
      : Error(what), best_(std::move(best)) {}
  const ClarkeResult& best() const noexcept { return best_; }

 private:
  ClarkeResult best_;
};

/// Multi-start gradient descent (Barzilai-Borwein steps with Armijo
/// backtracking) on F, c = (pi^p F_min)^(2/p). The disc of area a returns a.
ClarkeResult clarke_dual_solve(const BodyOracle& body, const SolverOptions& options = {});

}  // namespace caplab
