#include "caplab/capacities_ehz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "caplab/numeric.hpp"
#include "caplab/parallel.hpp"

namespace caplab {

double ehz_p_product(ConstVec c_values, double p) {
  if (!(p >= 1.0)) throw InvalidInput("ehz_p_product: p must be >= 1");
  if (c_values.empty()) throw InvalidInput("ehz_p_product: no capacities given");
  for (double c : c_values) {
    if (!(c > 0.0)) throw InvalidInput("ehz_p_product: capacities must be positive");
  }
  if (p >= 2.0) return *std::min_element(c_values.begin(), c_values.end());
  const double e = p / (p - 2.0);
  double acc = c_values[0];
  for (std::size_t i = 1; i < c_values.size(); ++i) acc = power_combine(acc, c_values[i], e);
  return acc;
}

double glue_period(double t1, double t2, double p) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw InvalidInput("glue_period: periods must be positive");
  if (!(p >= 1.0)) throw InvalidInput("glue_period: p must be >= 1");
  if (p == 2.0) throw UndefinedGluing("glue_period: exponent p/(p-2) is singular at p = 2");
  const double e = std::isinf(p) ? 1.0 : p / (p - 2.0);
  return power_combine(t1, t2, e);
}

std::optional<double> ehz_closed_form(const BodyOracle& body) {
  if (body.capacity_hint()) return body.capacity_hint();
  const auto* product = body.p_product();
  if (!product) return std::nullopt;
  std::vector<double> values;
  for (const auto& f : product->factors) {
    auto c = ehz_closed_form(f);
    if (!c) return std::nullopt;
    values.push_back(*c);
  }
  return ehz_p_product(values, product->p);
}

LoopConfiguration::LoopConfiguration(std::size_t dim_, std::size_t modes_)
    : dim(dim_), modes(modes_), cos_coeffs(dim_ * modes_, 0.0), sin_coeffs(dim_ * modes_, 0.0) {
  if (dim_ == 0 || dim_ % 2 != 0) throw InvalidInput("loop: dimension must be even and positive");
  if (modes_ == 0) throw InvalidInput("loop: at least one mode is required");
}

LoopConfiguration LoopConfiguration::circle(std::size_t dim, std::size_t modes, double area,
                                            std::size_t plane) {
  LoopConfiguration z(dim, modes);
  if (2 * plane + 1 >= dim) throw InvalidInput("loop: plane index out of range");
  const double r = std::sqrt(std::abs(area) / std::numbers::pi);
  z.cos_coeffs[2 * plane] = r;
  z.sin_coeffs[2 * plane + 1] = area >= 0.0 ? r : -r;
  return z;
}

void LoopConfiguration::position(double t, MutVec out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 1; j <= modes; ++j) {
    const double c = std::cos(static_cast<double>(j) * t);
    const double s = std::sin(static_cast<double>(j) * t);
    for (std::size_t i = 0; i < dim; ++i) {
      out[i] += cos_coeffs[(j - 1) * dim + i] * c + sin_coeffs[(j - 1) * dim + i] * s;
    }
  }
}

void LoopConfiguration::velocity(double t, MutVec out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = 1; j <= modes; ++j) {
    const double jd = static_cast<double>(j);
    const double c = std::cos(jd * t);
    const double s = std::sin(jd * t);
    for (std::size_t i = 0; i < dim; ++i) {
      out[i] += jd * (-cos_coeffs[(j - 1) * dim + i] * s + sin_coeffs[(j - 1) * dim + i] * c);
    }
  }
}

void LoopConfiguration::scale(double factor) {
  for (double& v : cos_coeffs) v *= factor;
  for (double& v : sin_coeffs) v *= factor;
}

namespace {

// <J a, b> with J(q, p) = (-p, q), over interleaved pairs.
double j_pairing(const double* a, const double* b, std::size_t dim) {
  double s = 0.0;
  for (std::size_t i = 0; i < dim; i += 2) s += a[i] * b[i + 1] - a[i + 1] * b[i];
  return s;
}

double action_of(const double* cos_c, const double* sin_c, std::size_t dim, std::size_t modes) {
  double a = 0.0;
  for (std::size_t j = 1; j <= modes; ++j) {
    a += static_cast<double>(j) * j_pairing(cos_c + (j - 1) * dim, sin_c + (j - 1) * dim, dim);
  }
  return std::numbers::pi * a;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Flat coefficient vector x = (cos block, sin block) and the sampled
// trigonometric tables shared by every evaluation.
class Discretization {
 public:
  Discretization(const BodyOracle& body, double p, std::size_t dim, std::size_t modes,
                 std::size_t samples)
      : body_(body), p_(p), dim_(dim), modes_(modes), samples_(samples),
        cos_(modes * samples), sin_(modes * samples) {
    if (const auto* product = body.p_product(); product && product->factors.size() > 1) {
      std::size_t offset = 0;
      for (const auto& f : product->factors) {
        blocks_.emplace_back(offset, f.dim());
        offset += f.dim();
      }
    }
    for (std::size_t j = 1; j <= modes; ++j) {
      for (std::size_t m = 0; m < samples; ++m) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(samples);
        cos_[(j - 1) * samples + m] = std::cos(static_cast<double>(j) * t);
        sin_[(j - 1) * samples + m] = std::sin(static_cast<double>(j) * t);
      }
    }
  }

  std::size_t size() const { return 2 * dim_ * modes_; }

  // Coordinate ranges of the factors when the body is a p-product.
  const std::vector<std::pair<std::size_t, std::size_t>>& blocks() const { return blocks_; }

  double block_weight(const std::vector<double>& x, std::size_t b) const {
    const auto [offset, width] = blocks_[b];
    double s = 0.0;
    for (std::size_t half = 0; half < 2; ++half) {
      for (std::size_t j = 0; j < modes_; ++j) {
        const std::size_t base = half * dim_ * modes_ + j * dim_ + offset;
        for (std::size_t i = 0; i < width; ++i) s += x[base + i] * x[base + i];
      }
    }
    return s;
  }

  void zero_block(std::vector<double>& x, std::size_t b) const {
    const auto [offset, width] = blocks_[b];
    for (std::size_t half = 0; half < 2; ++half) {
      for (std::size_t j = 0; j < modes_; ++j) {
        const std::size_t base = half * dim_ * modes_ + j * dim_ + offset;
        std::fill(x.begin() + static_cast<std::ptrdiff_t>(base),
                  x.begin() + static_cast<std::ptrdiff_t>(base + width), 0.0);
      }
    }
  }

  double action(const std::vector<double>& x) const {
    return action_of(x.data(), x.data() + dim_ * modes_, dim_, modes_);
  }

  // Mean of h^p(zdot) over the samples; gradient with respect to x if asked.
  double objective(const std::vector<double>& x, std::vector<double>* grad) const {
    const std::size_t block = dim_ * modes_;
    const double* a = x.data();
    const double* b = x.data() + block;
    std::vector<double> v(dim_), gh(dim_);
    if (grad) grad->assign(size(), 0.0);
    double total = 0.0;
    for (std::size_t m = 0; m < samples_; ++m) {
      std::fill(v.begin(), v.end(), 0.0);
      for (std::size_t j = 1; j <= modes_; ++j) {
        const double jd = static_cast<double>(j);
        const double c = cos_[(j - 1) * samples_ + m] * jd;
        const double s = sin_[(j - 1) * samples_ + m] * jd;
        const double* aj = a + (j - 1) * dim_;
        const double* bj = b + (j - 1) * dim_;
        for (std::size_t i = 0; i < dim_; ++i) v[i] += bj[i] * c - aj[i] * s;
      }
      const double h = body_.support(v);
      total += std::pow(h, p_);
      if (!grad || h <= 0.0) continue;
      body_.support_gradient(v, gh);
      const double w = p_ * std::pow(h, p_ - 1.0);
      for (std::size_t j = 1; j <= modes_; ++j) {
        const double jd = static_cast<double>(j);
        const double c = cos_[(j - 1) * samples_ + m] * jd;
        const double s = sin_[(j - 1) * samples_ + m] * jd;
        double* ga = grad->data() + (j - 1) * dim_;
        double* gb = grad->data() + block + (j - 1) * dim_;
        for (std::size_t i = 0; i < dim_; ++i) {
          ga[i] -= w * gh[i] * s;
          gb[i] += w * gh[i] * c;
        }
      }
    }
    const double inv = 1.0 / static_cast<double>(samples_);
    if (grad) {
      for (double& g : *grad) g *= inv;
    }
    return total * inv;
  }

  // F = A^{-p/2} G and its gradient.
  double functional(const std::vector<double>& x, std::vector<double>* grad) const {
    const double a = action(x);
    if (!(a > 0.0)) throw InvalidInput("clarke functional: loop action must be positive");
    const double g = objective(x, grad);
    const double scale = std::pow(a, -p_ / 2.0);
    if (grad) {
      const std::size_t block = dim_ * modes_;
      const double coupling = 0.5 * p_ * g / a;
      for (std::size_t j = 1; j <= modes_; ++j) {
        const double pj = std::numbers::pi * static_cast<double>(j);
        for (std::size_t i = 0; i < dim_; i += 2) {
          const std::size_t k = (j - 1) * dim_ + i;
          const double aq = x[k], ap = x[k + 1], bq = x[block + k], bp = x[block + k + 1];
          // dA/dA_j = -pi j J B_j, dA/dB_j = pi j J A_j
          const double da_q = pj * bp, da_p = -pj * bq;
          const double db_q = -pj * ap, db_p = pj * aq;
          (*grad)[k] = scale * ((*grad)[k] - coupling * da_q);
          (*grad)[k + 1] = scale * ((*grad)[k + 1] - coupling * da_p);
          (*grad)[block + k] = scale * ((*grad)[block + k] - coupling * db_q);
          (*grad)[block + k + 1] = scale * ((*grad)[block + k + 1] - coupling * db_p);
        }
      }
    }
    return scale * g;
  }

 private:
  const BodyOracle& body_;
  double p_;
  std::size_t dim_, modes_, samples_;
  std::vector<double> cos_, sin_;
  std::vector<std::pair<std::size_t, std::size_t>> blocks_;
};

std::vector<double> flatten(const LoopConfiguration& z) {
  std::vector<double> x(z.cos_coeffs);
  x.insert(x.end(), z.sin_coeffs.begin(), z.sin_coeffs.end());
  return x;
}

LoopConfiguration unflatten(const std::vector<double>& x, std::size_t dim, std::size_t modes) {
  LoopConfiguration z(dim, modes);
  std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(dim * modes), z.cos_coeffs.begin());
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(dim * modes), x.end(), z.sin_coeffs.begin());
  return z;
}

void check_solver_input(const BodyOracle& body, double p, std::size_t samples) {
  if (!body.smooth()) {
    throw UnsupportedBody("Clarke dual: body " + body.label() + " is not smooth-tagged");
  }
  if (!body.is_symplectic()) throw InvalidInput("Clarke dual: body dimension must be even");
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidInput("Clarke dual: p must lie in (1, inf)");
  if (!is_power_of_two(samples)) throw InvalidInput("Clarke dual: samples must be a power of two");
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

struct RestartOutcome {
  std::vector<double> x;
  double value = kInf;
  double gradient_norm = kInf;
  std::size_t iterations = 0;
  bool converged = false;
};

// On a p-product the support function is only C^1 where a factor's velocity
// vanishes, and minimizers often sit there. Zeroing a nearly idle factor and
// keeping the result when F does not increase lands exactly on that set.
bool try_drop_blocks(const Discretization& disc, std::vector<double>& x, double& f) {
  bool changed = false;
  double total = 0.0;
  for (double v : x) total += v * v;
  for (std::size_t b = 0; b < disc.blocks().size(); ++b) {
    const double w = disc.block_weight(x, b);
    if (w == 0.0 || w > 1e-4 * total) continue;
    std::vector<double> y = x;
    disc.zero_block(y, b);
    const double a = disc.action(y);
    if (!(a > 0.0)) continue;
    for (double& v : y) v /= std::sqrt(a);
    const double fy = disc.functional(y, nullptr);
    if (fy <= f) {
      x.swap(y);
      f = fy;
      changed = true;
    }
  }
  return changed;
}

RestartOutcome descend(const Discretization& disc, std::vector<double> x, const SolverOptions& o) {
  RestartOutcome out;
  double a = disc.action(x);
  if (a < 0.0) {
    // reverse orientation by negating the sine block
    for (std::size_t i = x.size() / 2; i < x.size(); ++i) x[i] = -x[i];
    a = -a;
  }
  if (!(a > 0.0)) return out;
  for (double& v : x) v /= std::sqrt(a);

  std::vector<double> g, gn, xn(x.size());
  double f = disc.functional(x, &g);
  double gnorm = norm(g);
  double step = 1.0 / std::max(gnorm, 1e-12);
  std::size_t it = 0;
  for (; it < o.max_iterations; ++it) {
    if (gnorm <= o.gradient_tolerance) {
      out.converged = true;
      break;
    }
    double trial = step;
    bool accepted = false;
    double fn = 0.0, an = 0.0;
    for (int attempt = 0; attempt < 80; ++attempt) {
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] - trial * g[i];
      an = disc.action(xn);
      if (an > 0.0) {
        fn = disc.functional(xn, nullptr);
        // slack of a few ulps of F lets BB steps proceed once the decrease drops below round-off
        if (fn <= f - 1e-4 * trial * gnorm * gnorm + 1e-14 * std::abs(f)) {
          accepted = true;
          break;
        }
      }
      trial *= 0.5;
    }
    if (!accepted) break;
    // F is scale invariant, so renormalizing to A = 1 keeps fn
    const double r = 1.0 / std::sqrt(an);
    for (double& v : xn) v *= r;
    fn = disc.functional(xn, &gn);
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = xn[i] - x[i];
      const double y = gn[i] - g[i];
      ss += s * s;
      sy += s * y;
    }
    step = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e10) : std::min(2.0 * trial, 1e10);
    x.swap(xn);
    g.swap(gn);
    f = fn;
    if ((it + 1) % 20 == 0 && try_drop_blocks(disc, x, f)) {
      f = disc.functional(x, &g);
      step = 1.0 / std::max(norm(g), 1e-12);
    }
    gnorm = norm(g);
  }
  if (gnorm <= o.gradient_tolerance) out.converged = true;
  out.x = std::move(x);
  out.value = f;
  out.gradient_norm = gnorm;
  out.iterations = it;
  return out;
}

}  // namespace

double action(const LoopConfiguration& z) {
  return action_of(z.cos_coeffs.data(), z.sin_coeffs.data(), z.dim, z.modes);
}

double clarke_objective(const BodyOracle& body, const LoopConfiguration& z, double p,
                        std::size_t samples) {
  check_solver_input(body, p, samples);
  if (z.dim != body.dim()) throw InvalidInput("clarke_objective: loop dimension mismatch");
  Discretization disc(body, p, z.dim, z.modes, samples);
  return disc.objective(flatten(z), nullptr);
}

double clarke_functional(const BodyOracle& body, const LoopConfiguration& z, double p,
                         std::size_t samples, std::vector<double>* gradient) {
  check_solver_input(body, p, samples);
  if (z.dim != body.dim()) throw InvalidInput("clarke_functional: loop dimension mismatch");
  Discretization disc(body, p, z.dim, z.modes, samples);
  return disc.functional(flatten(z), gradient);
}

ClarkeResult clarke_dual_solve(const BodyOracle& body, const SolverOptions& o) {
  check_solver_input(body, o.p, o.samples);
  if (o.restarts == 0 || o.modes == 0) throw InvalidInput("Clarke dual: restarts and modes must be positive");
  const std::size_t dim = body.dim();
  const Discretization disc(body, o.p, dim, o.modes, o.samples);

  std::vector<RestartOutcome> outcomes(o.restarts);
  parallel_for(o.restarts, [&](std::size_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> x(disc.size());
    const std::size_t block = dim * o.modes;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double j = static_cast<double>((i % block) / dim + 1);
      x[i] = normal(rng) / (j * j);
    }
    outcomes[r] = descend(disc, std::move(x), o);
  });

  std::size_t best = 0;
  std::size_t converged = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].converged) ++converged;
    if (outcomes[r].value < outcomes[best].value) best = r;
  }
  const auto& b = outcomes[best];
  if (b.x.empty()) throw NonConvergence("Clarke dual: every restart degenerated", {});

  ClarkeResult result;
  result.functional = b.value;
  result.capacity = std::pow(std::pow(std::numbers::pi, o.p) * b.value, 2.0 / o.p);
  result.loop = unflatten(b.x, dim, o.modes);
  result.gradient_norm = b.gradient_norm;
  result.iterations = b.iterations;
  result.converged_restarts = converged;
  if (converged == 0) {
    throw NonConvergence("Clarke dual: no restart reached gradient norm " +
                             std::to_string(o.gradient_tolerance),
                         result);
  }
  return result;
}

}  // namespace caplab
