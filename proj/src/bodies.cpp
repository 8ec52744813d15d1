#include "caplab/bodies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "caplab/errors.hpp"
#include "caplab/numeric.hpp"
#include "caplab/parallel.hpp"

namespace caplab {

const char* to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::kBall: return "ball";
    case BodyKind::kEllipsoid: return "ellipsoid";
    case BodyKind::kPolydisc: return "polydisc";
    case BodyKind::kBox: return "box";
    case BodyKind::kToric: return "toric";
    case BodyKind::kPProduct: return "p_product";
    case BodyKind::kCustom: return "custom";
  }
  return "custom";
}

BodyOracle::BodyOracle(Parts parts) {
  if (parts.dim == 0) throw InvalidSpec("body dimension must be positive");
  if (!parts.gauge || !parts.support) throw InvalidSpec("body needs gauge and support evaluators");
  parts_ = std::make_shared<const Parts>(std::move(parts));
}

double BodyOracle::gauge(ConstVec x) const {
  if (x.size() != parts_->dim) throw InvalidInput("gauge: dimension mismatch");
  return parts_->gauge(x);
}

double BodyOracle::support(ConstVec u) const {
  if (u.size() != parts_->dim) throw InvalidInput("support: dimension mismatch");
  return parts_->support(u);
}

void BodyOracle::support_gradient(ConstVec u, MutVec out) const {
  if (u.size() != parts_->dim || out.size() != parts_->dim) {
    throw InvalidInput("support_gradient: dimension mismatch");
  }
  if (parts_->support_gradient) {
    parts_->support_gradient(u, out);
    return;
  }
  std::vector<double> probe(u.begin(), u.end());
  double scale = 0.0;
  for (double v : u) scale = std::max(scale, std::abs(v));
  const double step = 1e-6 * std::max(scale, 1e-3);
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double saved = probe[i];
    probe[i] = saved + step;
    const double up = parts_->support(probe);
    probe[i] = saved - step;
    const double down = parts_->support(probe);
    probe[i] = saved;
    out[i] = (up - down) / (2.0 * step);
  }
}

namespace {

void require_positive(const std::vector<double>& values, const char* what) {
  if (values.empty()) throw InvalidSpec(std::string(what) + ": parameter list is empty");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidSpec(std::string(what) + ": parameters must be positive and finite");
    }
  }
}

double factorial(std::size_t n) { return std::tgamma(static_cast<double>(n) + 1.0); }

// Ellipsoid with planar weights a_i: sum pi |z_i|^2 / a_i <= 1.
BodyOracle::Parts ellipsoid_parts(std::vector<double> a) {
  const std::size_t n = a.size();
  double volume = 1.0;
  for (double ai : a) volume *= ai;
  volume /= factorial(n);

  BodyOracle::Parts parts;
  parts.dim = 2 * n;
  parts.gauge = [a](ConstVec x) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      s += std::numbers::pi * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]) / a[i];
    }
    return std::sqrt(s);
  };
  parts.support = [a](ConstVec u) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      s += a[i] / std::numbers::pi * (u[2 * i] * u[2 * i] + u[2 * i + 1] * u[2 * i + 1]);
    }
    return std::sqrt(s);
  };
  parts.support_gradient = [a](ConstVec u, MutVec out) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      s += a[i] / std::numbers::pi * (u[2 * i] * u[2 * i] + u[2 * i + 1] * u[2 * i + 1]);
    }
    const double h = std::sqrt(s);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double w = h > 0.0 ? a[i] / std::numbers::pi / h : 0.0;
      out[2 * i] = w * u[2 * i];
      out[2 * i + 1] = w * u[2 * i + 1];
    }
  };
  parts.kind = BodyKind::kEllipsoid;
  parts.closed_form_volume = volume;
  parts.smooth = true;
  parts.capacity_hint = *std::min_element(a.begin(), a.end());
  parts.parameters = std::move(a);
  return parts;
}

}  // namespace

BodyOracle make_ball(std::size_t half_dim, double capacity) {
  if (half_dim == 0) throw InvalidSpec("ball: dimension must be positive");
  if (!(capacity > 0.0) || !std::isfinite(capacity)) throw InvalidSpec("ball: capacity must be positive");
  auto parts = ellipsoid_parts(std::vector<double>(half_dim, capacity));
  parts.kind = BodyKind::kBall;
  parts.label = "B^" + std::to_string(2 * half_dim) + "[" + std::to_string(capacity) + "]";
  return BodyOracle(std::move(parts));
}

BodyOracle make_ellipsoid(std::vector<double> a) {
  require_positive(a, "ellipsoid");
  std::string label = "E(";
  for (std::size_t i = 0; i < a.size(); ++i) label += (i ? "," : "") + std::to_string(a[i]);
  auto parts = ellipsoid_parts(std::move(a));
  parts.label = label + ")";
  return BodyOracle(std::move(parts));
}

BodyOracle make_polydisc(std::vector<double> a) {
  require_positive(a, "polydisc");
  BodyOracle::Parts parts;
  parts.dim = 2 * a.size();
  parts.gauge = [a](ConstVec x) {
    double g = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double r2 = x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1];
      g = std::max(g, std::sqrt(std::numbers::pi * r2 / a[i]));
    }
    return g;
  };
  parts.support = [a](ConstVec u) {
    double h = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      h += std::sqrt(a[i] / std::numbers::pi) * std::hypot(u[2 * i], u[2 * i + 1]);
    }
    return h;
  };
  double volume = 1.0;
  for (double ai : a) volume *= ai;
  parts.kind = BodyKind::kPolydisc;
  parts.closed_form_volume = volume;
  parts.smooth = false;
  parts.capacity_hint = *std::min_element(a.begin(), a.end());
  parts.label = "P(";
  for (std::size_t i = 0; i < a.size(); ++i) parts.label += (i ? "," : "") + std::to_string(a[i]);
  parts.label += ")";
  parts.parameters = std::move(a);
  return BodyOracle(std::move(parts));
}

BodyOracle make_box(std::vector<double> half_widths) {
  require_positive(half_widths, "box");
  const auto& w = half_widths;
  BodyOracle::Parts parts;
  parts.dim = w.size();
  parts.gauge = [w](ConstVec x) {
    double g = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) g = std::max(g, std::abs(x[i]) / w[i]);
    return g;
  };
  parts.support = [w](ConstVec u) {
    double h = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) h += w[i] * std::abs(u[i]);
    return h;
  };
  double volume = 1.0;
  for (double wi : w) volume *= 2.0 * wi;
  parts.kind = BodyKind::kBox;
  parts.closed_form_volume = volume;
  if (w.size() % 2 == 0) {
    // product of rectangles in the symplectic planes
    double c = kInf;
    for (std::size_t i = 0; i < w.size(); i += 2) c = std::min(c, 4.0 * w[i] * w[i + 1]);
    parts.capacity_hint = c;
  }
  parts.label = "box";
  parts.parameters = half_widths;
  return BodyOracle(std::move(parts));
}

BodyOracle make_standard_body(const StandardBodySpec& spec) {
  return std::visit(
      [](const auto& s) -> BodyOracle {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, BallSpec>) {
          return make_ball(s.half_dim, s.capacity);
        } else if constexpr (std::is_same_v<T, EllipsoidSpec>) {
          return make_ellipsoid(s.a);
        } else if constexpr (std::is_same_v<T, PolydiscSpec>) {
          return make_polydisc(s.a);
        } else {
          return make_box(s.half_widths);
        }
      },
      spec);
}

BodyOracle make_custom_body(std::size_t dim, BodyOracle::ScalarField gauge,
                            BodyOracle::ScalarField support, bool smooth, std::string label) {
  BodyOracle::Parts parts;
  parts.dim = dim;
  parts.gauge = std::move(gauge);
  parts.support = std::move(support);
  parts.kind = BodyKind::kCustom;
  parts.smooth = smooth;
  parts.label = std::move(label);
  return BodyOracle(std::move(parts));
}

double lp_combine(ConstVec values, double p) {
  double hi = 0.0;
  for (double v : values) hi = std::max(hi, v);
  if (std::isinf(p)) return hi;
  if (p == 1.0) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  if (hi == 0.0) return 0.0;
  double s = 0.0;
  for (double v : values) s += std::pow(v / hi, p);
  return hi * std::pow(s, 1.0 / p);
}

namespace {

void validate_product(const PProductSpec& spec) {
  if (!(spec.p >= 1.0)) throw InvalidSpec("p-product: p must be >= 1");
  if (spec.factors.empty()) throw InvalidSpec("p-product: factor list is empty");
}

std::size_t product_dim(const PProductSpec& spec) {
  std::size_t d = 0;
  for (const auto& f : spec.factors) d += f.dim();
  return d;
}

template <typename Eval>
double combine_blocks(const PProductSpec& spec, ConstVec x, double exponent, Eval eval) {
  if (x.size() != product_dim(spec)) throw InvalidInput("p-product: dimension mismatch");
  std::vector<double> parts;
  parts.reserve(spec.factors.size());
  std::size_t offset = 0;
  for (const auto& f : spec.factors) {
    parts.push_back(eval(f, x.subspan(offset, f.dim())));
    offset += f.dim();
  }
  return lp_combine(parts, exponent);
}

}  // namespace

double gauge_p_product(const PProductSpec& spec, ConstVec x) {
  validate_product(spec);
  return combine_blocks(spec, x, spec.p,
                        [](const BodyOracle& f, ConstVec block) { return f.gauge(block); });
}

double support_p_product(const PProductSpec& spec, ConstVec u) {
  validate_product(spec);
  return combine_blocks(spec, u, conjugate_exponent(spec.p),
                        [](const BodyOracle& f, ConstVec block) { return f.support(block); });
}

double volume_exact_p_product(const PProductSpec& spec) {
  validate_product(spec);
  const auto& first = spec.factors.front();
  if (!first.closed_form_volume()) throw UnsupportedBody("volume: factor has no closed-form volume");
  double volume = *first.closed_form_volume();
  double dim = static_cast<double>(first.dim());
  for (std::size_t i = 1; i < spec.factors.size(); ++i) {
    const auto& f = spec.factors[i];
    if (!f.closed_form_volume()) throw UnsupportedBody("volume: factor has no closed-form volume");
    const double m = static_cast<double>(f.dim());
    const double ratio = std::isinf(spec.p) ? 1.0 : gamma_ratio(dim / spec.p, m / spec.p);
    volume *= ratio * *f.closed_form_volume();
    dim += m;
  }
  return volume;
}

BodyOracle make_p_product(PProductSpec spec) {
  validate_product(spec);
  auto shared = std::make_shared<const PProductSpec>(std::move(spec));
  const PProductSpec& s = *shared;

  BodyOracle::Parts parts;
  parts.dim = product_dim(s);
  parts.gauge = [shared](ConstVec x) { return gauge_p_product(*shared, x); };
  parts.support = [shared](ConstVec u) { return support_p_product(*shared, u); };

  bool all_smooth = true;
  bool all_gradients = true;
  bool all_volumes = true;
  for (const auto& f : s.factors) {
    all_smooth = all_smooth && f.smooth();
    all_gradients = all_gradients && f.has_support_gradient();
    all_volumes = all_volumes && f.closed_form_volume().has_value();
  }
  parts.smooth = all_smooth && s.p > 1.0 && std::isfinite(s.p);
  if (all_gradients) {
    parts.support_gradient = [shared](ConstVec u, MutVec out) {
      const auto& spec = *shared;
      const double q = conjugate_exponent(spec.p);
      const double h = support_p_product(spec, u);
      std::size_t offset = 0;
      std::size_t argmax = 0;
      double best = -1.0;
      for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        const auto& f = spec.factors[i];
        const double hi = f.support(u.subspan(offset, f.dim()));
        if (hi > best) {
          best = hi;
          argmax = i;
        }
        offset += f.dim();
      }
      offset = 0;
      for (std::size_t i = 0; i < spec.factors.size(); ++i) {
        const auto& f = spec.factors[i];
        auto block = u.subspan(offset, f.dim());
        auto out_block = out.subspan(offset, f.dim());
        f.support_gradient(block, out_block);
        double weight = 1.0;
        if (std::isinf(q)) {
          weight = i == argmax ? 1.0 : 0.0;
        } else if (q != 1.0) {
          const double hi = f.support(block);
          weight = h > 0.0 ? std::pow(hi / h, q - 1.0) : 0.0;
        }
        for (double& v : out_block) v *= weight;
        offset += f.dim();
      }
    };
  }
  parts.kind = BodyKind::kPProduct;
  if (all_volumes) parts.closed_form_volume = volume_exact_p_product(s);
  parts.parameters = {s.p};
  parts.label = "(";
  for (std::size_t i = 0; i < s.factors.size(); ++i) {
    if (i) parts.label += std::isinf(s.p) ? " x_inf " : " x_" + std::to_string(s.p) + " ";
    parts.label += s.factors[i].label();
  }
  parts.label += ")";

  BodyOracle body(std::move(parts));
  body.product_ = shared;
  return body;
}

VolumeEstimate volume_monte_carlo(const BodyOracle& body, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InvalidInput("volume_monte_carlo: samples must be >= 1");
  const std::size_t d = body.dim();
  std::vector<double> lo(d), hi(d), axis(d, 0.0);
  double box_volume = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    axis[i] = 1.0;
    hi[i] = body.support(axis);
    axis[i] = -1.0;
    lo[i] = -body.support(axis);
    axis[i] = 0.0;
    box_volume *= hi[i] - lo[i];
  }

  constexpr std::size_t kShards = 16;
  std::array<std::size_t, kShards> hits{};
  parallel_for(kShards, [&](std::size_t shard) {
    const std::size_t begin = samples * shard / kShards;
    const std::size_t end = samples * (shard + 1) / kShards;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shard)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(d);
    std::size_t count = 0;
    for (std::size_t s = begin; s < end; ++s) {
      for (std::size_t i = 0; i < d; ++i) x[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
      if (body.gauge(x) <= 1.0) ++count;
    }
    hits[shard] = count;
  });

  std::size_t total = 0;
  for (auto h : hits) total += h;
  const double frac = static_cast<double>(total) / static_cast<double>(samples);
  VolumeEstimate est;
  est.samples = samples;
  est.mean = box_volume * frac;
  est.standard_error = box_volume * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples));
  return est;
}

std::optional<std::string> find_invariant_violation(const BodyOracle& body, std::size_t samples,
                                                    std::uint64_t seed, double rel_tol) {
  const std::size_t d = body.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  auto draw = [&](std::vector<double>& v) {
    double norm = 0.0;
    for (auto& c : v) {
      c = normal(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    for (auto& c : v) c /= norm;
  };
  auto close = [rel_tol](double a, double b) {
    return std::abs(a - b) <= rel_tol * std::max({std::abs(a), std::abs(b), 1e-300});
  };

  std::vector<double> x(d), u(d), w(d), tmp(d);
  for (std::size_t s = 0; s < samples; ++s) {
    draw(x);
    draw(u);
    draw(w);
    const double gx = body.gauge(x);
    if (!std::isfinite(gx) || !(gx > 0.0)) return "gauge not finite and positive on the unit sphere";
    const double lambda = scale(rng);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = lambda * x[i];
    if (!close(body.gauge(tmp), lambda * gx)) return "gauge is not positively 1-homogeneous";
    const double hu = body.support(u);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = lambda * u[i];
    if (!close(body.support(tmp), lambda * hu)) return "support is not positively 1-homogeneous";
    const double hw = body.support(w);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = u[i] + w[i];
    if (body.support(tmp) > (hu + hw) * (1.0 + rel_tol)) return "support is not subadditive";
    double pairing = 0.0;
    for (std::size_t i = 0; i < d; ++i) pairing += x[i] * u[i];
    if (pairing > gx * hu * (1.0 + rel_tol) + 1e-15) return "duality pairing <x,u> <= |x|_K h_K(u) fails";
  }
  return std::nullopt;
}

}  // namespace caplab
