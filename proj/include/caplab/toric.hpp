#pragma once

// Toric domains X_Omega = mu^{-1}(Omega) for regions Omega in the closed
// nonnegative orthant, mu(z) = pi (|z_1|^2, ..., |z_n|^2).

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "caplab/bodies.hpp"

namespace caplab {

/// Convexity of the unconditional extension of Omega. The weighted simplex
/// is both convex and concave.
enum class Convexity { kUnknown, kConvex, kConcave, kBoth };

const char* to_string(Convexity c);

enum class ProfileShape {
  kSimplex,    // sum x_i / a_i <= 1 (ellipsoid)
  kBox,        // prod [0, a_i] (polydisc)
  kLpOrthant,  // sum (x_i / r_i)^s <= 1
  kProduct,    // Omega_1 x_s Omega_2
  kCustom,     // black-box gauge, n <= 3
};

const char* to_string(ProfileShape s);

class ToricProfile {
 public:
  using Gauge = std::function<double(ConstVec)>;

  std::size_t n() const noexcept;
  /// ||x||_Omega for x in the orthant.
  double gauge_plus(ConstVec x) const;
  ProfileShape shape() const noexcept;
  Convexity convexity() const noexcept;
  bool is_convex() const noexcept;
  bool is_concave() const noexcept;
  /// Weights a_i (simplex, box) or radii r_i (lp_orthant); empty otherwise.
  const std::vector<double>& radii() const noexcept;
  /// Exponent s of an lp_orthant shape: 1 for the simplex, inf for the box.
  double power() const noexcept;
  const std::string& label() const noexcept;

  /// Product structure; null unless shape() == kProduct.
  const ToricProfile* left() const noexcept;
  const ToricProfile* right() const noexcept;
  /// Profile-level exponent s = p/2 of a product.
  double product_exponent() const noexcept;

  struct Data;
  explicit ToricProfile(std::shared_ptr<const Data> data);

 private:
  std::shared_ptr<const Data> data_;
};

ToricProfile make_simplex_profile(std::vector<double> a);
ToricProfile make_box_profile(std::vector<double> a);
/// {sum (x_i / r_i)^s <= 1}; convex for s >= 1, concave for s <= 1.
ToricProfile make_lp_profile(double power, std::vector<double> radii);
/// Black-box profile; the convexity tag is trusted (see
/// find_convexity_violation). Restricted to n <= 3.
ToricProfile make_custom_profile(std::size_t n, ToricProfile::Gauge gauge_plus, Convexity tag,
                                 std::string label = "custom");

/// Toric body in R^{2n}: gauge(x) = sqrt(gauge_plus(mu(x))).
BodyOracle toric_body(const ToricProfile& profile);

/// Omega_1 x_{p/2} Omega_2, so that X of it equals X_{Omega_1} x_p X_{Omega_2}.
/// Two lp shapes with equal power s = p/2 collapse to a joint lp shape.
ToricProfile profile_p_product(const ToricProfile& a, const ToricProfile& b, double p);

/// h_Omega(v) = sup_{w in Omega} <v, w> for v >= 0.
double profile_support(const ToricProfile& profile, ConstVec v);

/// [v]_Omega = min <v, w> over the closure of dOmega ∩ R^n_{>0}, v > 0.
double profile_face_value(const ToricProfile& profile, ConstVec v);

/// Generic route over the normalized boundary {w >= 0 : ||w||_Omega = 1}:
/// grid seeds on the angle chart, then coordinate-wise golden-section
/// refinement. Used for custom shapes; exposed for cross-checks.
double boundary_extremum(const ToricProfile& profile,
                         const std::function<double(ConstVec)>& objective, bool maximize);

/// Samples homogeneity of the gauge and the midpoint-convexity / reverse
/// triangle inequality implied by the convexity tag.
std::optional<std::string> find_convexity_violation(const ToricProfile& profile,
                                                    std::size_t samples, std::uint64_t seed,
                                                    double rel_tol = 1e-9);

}  // namespace caplab
