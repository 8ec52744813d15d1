#pragma once

// Convex bodies described by their gauge and support functions.
//
// Symplectic bodies live in R^{2n} with interleaved coordinates
// (q1, p1, q2, p2, ...), so the i-th complex coordinate is
// z_i = x[2i] + i x[2i+1]. Capacity conventions follow the usual
// normalization: B^2[a] is the disc of area a, so B^{2n}[r] has Euclidean
// radius sqrt(r / pi).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace caplab {

using ConstVec = std::span<const double>;
using MutVec = std::span<double>;

enum class BodyKind { kBall, kEllipsoid, kPolydisc, kBox, kToric, kPProduct, kCustom };

const char* to_string(BodyKind kind);

class BodyOracle;

/// p-product K_1 x_p K_2 x_p ... ; p = +inf is the Cartesian product and
/// p = 1 the free sum.
struct PProductSpec {
  double p = 2.0;
  std::vector<BodyOracle> factors;
};

/// Immutable convex body with the origin in its interior.
class BodyOracle {
 public:
  using ScalarField = std::function<double(ConstVec)>;
  using GradientField = std::function<void(ConstVec, MutVec)>;

  struct Parts {
    std::size_t dim = 0;
    ScalarField gauge;
    ScalarField support;
    /// Gradient of the support function away from the origin; may be empty.
    GradientField support_gradient;
    BodyKind kind = BodyKind::kCustom;
    std::optional<double> closed_form_volume;
    bool smooth = false;
    /// Closed-form EHZ capacity when the constructor knows it.
    std::optional<double> capacity_hint;
    /// Structural parameters (a_i, half widths, ...) for reporting.
    std::vector<double> parameters;
    std::string label;
  };

  explicit BodyOracle(Parts parts);

  std::size_t dim() const noexcept { return parts_->dim; }
  bool is_symplectic() const noexcept { return parts_->dim % 2 == 0; }
  std::size_t half_dim() const noexcept { return parts_->dim / 2; }

  double gauge(ConstVec x) const;
  double support(ConstVec u) const;
  bool has_support_gradient() const noexcept { return static_cast<bool>(parts_->support_gradient); }
  /// Writes grad h(u) into out; central differences when no analytic form exists.
  void support_gradient(ConstVec u, MutVec out) const;

  BodyKind kind() const noexcept { return parts_->kind; }
  const std::optional<double>& closed_form_volume() const noexcept { return parts_->closed_form_volume; }
  bool smooth() const noexcept { return parts_->smooth; }
  const std::optional<double>& capacity_hint() const noexcept { return parts_->capacity_hint; }
  const std::vector<double>& parameters() const noexcept { return parts_->parameters; }
  const std::string& label() const noexcept { return parts_->label; }

  /// Set only for bodies built by make_p_product.
  const PProductSpec* p_product() const noexcept { return product_.get(); }

 private:
  friend BodyOracle make_p_product(PProductSpec spec);

  std::shared_ptr<const Parts> parts_;
  std::shared_ptr<const PProductSpec> product_;
};

struct BallSpec {
  std::size_t half_dim = 1;
  double capacity = 1.0;
};
struct EllipsoidSpec {
  std::vector<double> a;
};
struct PolydiscSpec {
  std::vector<double> a;
};
struct BoxSpec {
  std::vector<double> half_widths;
};
using StandardBodySpec = std::variant<BallSpec, EllipsoidSpec, PolydiscSpec, BoxSpec>;

/// Ball B^{2n}[r], ellipsoid E(a), polydisc P(a) or axis box; throws
/// InvalidSpec on a nonpositive parameter.
BodyOracle make_standard_body(const StandardBodySpec& spec);

BodyOracle make_ball(std::size_t half_dim, double capacity);
BodyOracle make_ellipsoid(std::vector<double> a);
BodyOracle make_polydisc(std::vector<double> a);
BodyOracle make_box(std::vector<double> half_widths);
BodyOracle make_custom_body(std::size_t dim, BodyOracle::ScalarField gauge,
                            BodyOracle::ScalarField support, bool smooth = false,
                            std::string label = "custom");

/// (sum_i ||x_i||^p)^{1/p}, max for p = inf.
double gauge_p_product(const PProductSpec& spec, ConstVec x);
/// (sum_i h_i^q)^{1/q} with q conjugate to p; max for p = 1.
double support_p_product(const PProductSpec& spec, ConstVec u);
/// Gamma-ratio volume folded left to right; UnsupportedBody if a factor
/// has no closed-form volume.
double volume_exact_p_product(const PProductSpec& spec);
/// Validates p >= 1 and a nonempty factor list, then wraps the product.
BodyOracle make_p_product(PProductSpec spec);

/// l^p norm of a vector of nonnegative values (p in [1, inf]), overflow-safe.
double lp_combine(ConstVec values, double p);

struct VolumeEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Rejection sampling in the support-derived bounding box. The estimate is a
/// deterministic function of (seed, samples) regardless of thread count.
VolumeEstimate volume_monte_carlo(const BodyOracle& body, std::size_t samples,
                                  std::uint64_t seed);

/// First failed invariant, or nullopt. Samples homogeneity of gauge and
/// support, subadditivity of support, the duality pairing, and positivity of
/// the gauge on the unit sphere.
std::optional<std::string> find_invariant_violation(const BodyOracle& body,
                                                    std::size_t samples,
                                                    std::uint64_t seed,
                                                    double rel_tol = 1e-9);

}  // namespace caplab
