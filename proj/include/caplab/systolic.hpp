#pragma once

// Systolic ratios of convex bodies and their p-products.

#include <cstddef>
#include <string>
#include <vector>

#include "caplab/report.hpp"

namespace caplab {

/// c / (n! V)^(1/n).
double systolic_ratio(double capacity, double volume, std::size_t n);

/// EHZ capacity, volume and half dimension of a body in R^{2n}.
struct SystolicData {
  double capacity = 1.0;
  double volume = 1.0;
  std::size_t half_dim = 1;
};

/// Capacity from the EHZ product rule, volume from the Gamma ratio.
SystolicData p_product_data(const SystolicData& k, const SystolicData& t, double p);

/// sys_{n+m}(K x_p T)^{n+m} against sys_n(K)^n sys_m(T)^m. The row passes
/// when LHS <= RHS (1e-12 relative) and equality holds exactly when p = 2
/// and the capacities agree. computed is LHS/RHS.
VerificationReport p_product_systolic_check(const SystolicData& k, const SystolicData& t, double p,
                                            const std::string& name = "thm1_2");

/// (n/(n+1)) (2n+1)^(1/(n+1)).
double free_sum_ratio(std::size_t n);
/// sys(K x_1 T) / sys(K x_2 T) for K = B^{2n}[1], T = B^2[n], built from the
/// capacity rule and the Gamma-ratio volume.
double free_sum_ratio_from_products(std::size_t n);

/// g(x) for x in [1/2, 1], evaluated in log space.
double g_function(double x, std::size_t n, std::size_t m);

/// Second differences of ln g on `grid` uniform points of [1/2, 1]. Rows:
/// `<name>.second_difference` (computed = smallest difference, must be > 0),
/// `<name>.max_at_half` (computed = max of g on the grid, expected 1) and
/// `<name>.g1` (computed = g(1), must be < 1).
VerificationReport g_logconvexity_audit(std::size_t n, std::size_t m, std::size_t grid,
                                        const std::string& name = "g_convexity");

struct TensorPowerDemo {
  /// sys_{nk} of the k-fold 2-product, k = 1..m_powers.
  std::vector<double> ratios;
  /// sys_n(K)^n and sys_{2n}(K x_2 B^{2n}[c(K)])^{2n}.
  double padding_lhs = 0.0;
  double padding_rhs = 0.0;
};

/// Synthetic body with the given systolic ratio, iterated under 2-products.
TensorPowerDemo tensor_power_demo(double sys_value, std::size_t n, std::size_t m_powers);

}  // namespace caplab
