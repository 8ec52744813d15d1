#include "caplab/toric.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <numbers>
#include <random>

#include "caplab/errors.hpp"
#include "caplab/numeric.hpp"

namespace caplab {

struct ToricProfile::Data {
  std::size_t n = 0;
  ProfileShape shape = ProfileShape::kCustom;
  Convexity convexity = Convexity::kUnknown;
  double power = 1.0;
  std::vector<double> radii;
  Gauge gauge;
  std::shared_ptr<const ToricProfile> left;
  std::shared_ptr<const ToricProfile> right;
  double product_exponent = 1.0;
  std::string label;
};

const char* to_string(Convexity c) {
  switch (c) {
    case Convexity::kConvex: return "convex";
    case Convexity::kConcave: return "concave";
    case Convexity::kBoth: return "convex+concave";
    case Convexity::kUnknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(ProfileShape s) {
  switch (s) {
    case ProfileShape::kSimplex: return "simplex";
    case ProfileShape::kBox: return "box";
    case ProfileShape::kLpOrthant: return "lp_orthant";
    case ProfileShape::kProduct: return "product";
    case ProfileShape::kCustom: return "custom";
  }
  return "custom";
}

ToricProfile::ToricProfile(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

std::size_t ToricProfile::n() const noexcept { return data_->n; }
ProfileShape ToricProfile::shape() const noexcept { return data_->shape; }
Convexity ToricProfile::convexity() const noexcept { return data_->convexity; }
bool ToricProfile::is_convex() const noexcept {
  return data_->convexity == Convexity::kConvex || data_->convexity == Convexity::kBoth;
}
bool ToricProfile::is_concave() const noexcept {
  return data_->convexity == Convexity::kConcave || data_->convexity == Convexity::kBoth;
}
const std::vector<double>& ToricProfile::radii() const noexcept { return data_->radii; }
double ToricProfile::power() const noexcept { return data_->power; }
const std::string& ToricProfile::label() const noexcept { return data_->label; }
const ToricProfile* ToricProfile::left() const noexcept { return data_->left.get(); }
const ToricProfile* ToricProfile::right() const noexcept { return data_->right.get(); }
double ToricProfile::product_exponent() const noexcept { return data_->product_exponent; }

double ToricProfile::gauge_plus(ConstVec x) const {
  if (x.size() != data_->n) throw InvalidInput("gauge_plus: dimension mismatch");
  return data_->gauge(x);
}

namespace {

bool is_lp_family(const ToricProfile& p) {
  return p.shape() == ProfileShape::kSimplex || p.shape() == ProfileShape::kBox ||
         p.shape() == ProfileShape::kLpOrthant;
}

Convexity lp_convexity(double s) {
  if (s == 1.0) return Convexity::kBoth;
  return s > 1.0 ? Convexity::kConvex : Convexity::kConcave;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v[i]);
    out += (i ? "," : "");
    out += buf;
  }
  return out;
}

ToricProfile lp_profile(ProfileShape shape, double s, std::vector<double> radii) {
  if (radii.empty()) throw InvalidSpec("profile: parameter list is empty");
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidSpec("profile: parameters must be positive");
  }
  if (!(s > 0.0)) throw InvalidSpec("lp_orthant: power must be positive");
  auto data = std::make_shared<ToricProfile::Data>();
  data->n = radii.size();
  data->shape = shape;
  data->power = s;
  data->convexity = lp_convexity(s);
  data->gauge = [s, radii](ConstVec x) {
    std::vector<double> scaled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = std::abs(x[i]) / radii[i];
    if (s < 1.0) {
      double hi = *std::max_element(scaled.begin(), scaled.end());
      if (hi == 0.0) return 0.0;
      double acc = 0.0;
      for (double v : scaled) acc += std::pow(v / hi, s);
      return hi * std::pow(acc, 1.0 / s);
    }
    return lp_combine(scaled, s);
  };
  switch (shape) {
    case ProfileShape::kSimplex: data->label = "simplex(" + join(radii) + ")"; break;
    case ProfileShape::kBox: data->label = "box(" + join(radii) + ")"; break;
    default: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", s);
      data->label = std::string("lp(") + buf + ";" + join(radii) + ")";
    }
  }
  data->radii = std::move(radii);
  return ToricProfile(std::move(data));
}

// Unit direction in the closed orthant. The cosine is taken as sin(pi/2 - a)
// so the edges of the angle square land exactly on the coordinate planes.
std::vector<double> orthant_direction(std::size_t n, const double* angles) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  auto cosine = [](double a) { return std::sin(kHalfPi - a); };
  if (n == 2) return {cosine(angles[0]), std::sin(angles[0])};
  return {std::sin(angles[1]) * cosine(angles[0]), std::sin(angles[1]) * std::sin(angles[0]),
          cosine(angles[1])};
}

// Value of f(t) = (1-t)^{1/s} a + t^{1/s} b at the extremum over t in [0,1]:
// the support (maximize) or face value (minimize) of a union of scaled slabs.
double union_extremum(double a, double b, double s, bool maximize) {
  if (std::isinf(s)) return maximize ? a + b : std::min(a, b);
  if (s == 1.0) return maximize ? std::max(a, b) : std::min(a, b);
  // f is concave in t for s > 1 and convex for s < 1
  const bool concave = s > 1.0;
  if (maximize != concave) return maximize ? std::max(a, b) : std::min(a, b);
  const double e = 1.0 / s;
  auto f = [a, b, e](double t) { return std::pow(1.0 - t, e) * a + std::pow(t, e) * b; };
  return maximize ? golden_section_max(f, 0.0, 1.0).value : golden_section_min(f, 0.0, 1.0).value;
}

// Nelder-Mead maximisation over the angle square, with the box enforced by
// clamping. Follows ridges where coordinate sweeps stall on a kink.
std::array<double, 2> nelder_mead_max(const std::function<double(const double*)>& f,
                                      std::array<double, 2> start, double size, double& value) {
  const double hi = std::numbers::pi / 2.0;
  auto clamp = [&](std::array<double, 2> p) {
    for (double& c : p) c = std::clamp(c, 0.0, hi);
    return p;
  };
  std::array<std::array<double, 2>, 3> pts{start, clamp({start[0] + size, start[1]}),
                                           clamp({start[0], start[1] + size})};
  std::array<double, 3> val{};
  for (int i = 0; i < 3; ++i) val[i] = f(pts[i].data());
  for (int iter = 0; iter < 400; ++iter) {
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) { return val[a] > val[b]; });
    const int best = order[0], mid = order[1], worst = order[2];
    const double spread = std::max(std::abs(pts[best][0] - pts[worst][0]) + std::abs(pts[best][1] - pts[worst][1]),
                                   std::abs(pts[best][0] - pts[mid][0]) + std::abs(pts[best][1] - pts[mid][1]));
    if (spread < 1e-14) break;
    const std::array<double, 2> centre{0.5 * (pts[best][0] + pts[mid][0]), 0.5 * (pts[best][1] + pts[mid][1])};
    auto along = [&](double t) {
      return clamp({centre[0] + t * (pts[worst][0] - centre[0]), centre[1] + t * (pts[worst][1] - centre[1])});
    };
    const auto reflected = along(-1.0);
    const double fr = f(reflected.data());
    if (fr > val[best]) {
      const auto expanded = along(-2.0);
      const double fe = f(expanded.data());
      if (fe > fr) {
        pts[worst] = expanded;
        val[worst] = fe;
      } else {
        pts[worst] = reflected;
        val[worst] = fr;
      }
      continue;
    }
    if (fr > val[mid]) {
      pts[worst] = reflected;
      val[worst] = fr;
      continue;
    }
    const auto contracted = fr > val[worst] ? along(-0.5) : along(0.5);
    const double fc = f(contracted.data());
    if (fc > std::max(fr, val[worst])) {
      pts[worst] = contracted;
      val[worst] = fc;
      continue;
    }
    for (int i : {mid, worst}) {
      pts[i] = {0.5 * (pts[i][0] + pts[best][0]), 0.5 * (pts[i][1] + pts[best][1])};
      val[i] = f(pts[i].data());
    }
  }
  const int top = static_cast<int>(std::max_element(val.begin(), val.end()) - val.begin());
  value = val[top];
  return pts[top];
}

}  // namespace

ToricProfile make_simplex_profile(std::vector<double> a) {
  return lp_profile(ProfileShape::kSimplex, 1.0, std::move(a));
}

ToricProfile make_box_profile(std::vector<double> a) {
  return lp_profile(ProfileShape::kBox, kInf, std::move(a));
}

ToricProfile make_lp_profile(double power, std::vector<double> radii) {
  return lp_profile(ProfileShape::kLpOrthant, power, std::move(radii));
}

ToricProfile make_custom_profile(std::size_t n, ToricProfile::Gauge gauge_plus, Convexity tag,
                                 std::string label) {
  if (n == 0 || n > 3) throw InvalidSpec("custom profile: dimension must be 1, 2 or 3");
  if (!gauge_plus) throw InvalidSpec("custom profile: missing gauge");
  auto data = std::make_shared<ToricProfile::Data>();
  data->n = n;
  data->shape = ProfileShape::kCustom;
  data->convexity = tag;
  data->gauge = std::move(gauge_plus);
  data->label = std::move(label);
  return ToricProfile(std::move(data));
}

ToricProfile profile_p_product(const ToricProfile& a, const ToricProfile& b, double p) {
  if (!(p >= 1.0)) throw InvalidInput("profile_p_product: p must be >= 1");
  const double s = std::isinf(p) ? kInf : p / 2.0;

  if (is_lp_family(a) && is_lp_family(b) && a.power() == s && b.power() == s) {
    std::vector<double> radii = a.radii();
    radii.insert(radii.end(), b.radii().begin(), b.radii().end());
    return lp_profile(a.shape() == b.shape() ? a.shape() : ProfileShape::kLpOrthant, s,
                      std::move(radii));
  }

  auto data = std::make_shared<ToricProfile::Data>();
  data->n = a.n() + b.n();
  data->shape = ProfileShape::kProduct;
  data->product_exponent = s;
  data->left = std::make_shared<const ToricProfile>(a);
  data->right = std::make_shared<const ToricProfile>(b);
  const bool convex = a.is_convex() && b.is_convex() && p >= 2.0;
  const bool concave = a.is_concave() && b.is_concave() && p <= 2.0;
  data->convexity = convex && concave ? Convexity::kBoth
                    : convex          ? Convexity::kConvex
                    : concave         ? Convexity::kConcave
                                      : Convexity::kUnknown;
  const std::size_t na = a.n();
  data->gauge = [a, b, s, na](ConstVec x) {
    const double ga = a.gauge_plus(x.subspan(0, na));
    const double gb = b.gauge_plus(x.subspan(na));
    if (std::isinf(s)) return std::max(ga, gb);
    if (s == 1.0) return ga + gb;
    const double hi = std::max(ga, gb);
    if (hi == 0.0) return 0.0;
    return hi * std::pow(std::pow(ga / hi, s) + std::pow(gb / hi, s), 1.0 / s);
  };
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", s);
  data->label = "(" + a.label() + " x_" + buf + " " + b.label() + ")";
  return ToricProfile(std::move(data));
}

double boundary_extremum(const ToricProfile& profile,
                         const std::function<double(ConstVec)>& objective, bool maximize) {
  const std::size_t n = profile.n();
  const double sign = maximize ? 1.0 : -1.0;
  if (n == 1) {
    const double one = 1.0;
    const double w = 1.0 / profile.gauge_plus(ConstVec(&one, 1));
    return objective(ConstVec(&w, 1));
  }
  if (n > 3) throw UnsupportedBody("boundary search is limited to n <= 3");

  const std::size_t dims = n - 1;
  const std::function<double(const double*)> eval = [&](const double* angles) {
    auto d = orthant_direction(n, angles);
    const double g = profile.gauge_plus(d);
    for (double& c : d) c /= g;
    return sign * objective(d);
  };

  constexpr int kGrid = 32;
  const double half_pi = std::numbers::pi / 2.0;
  const double cell = half_pi / kGrid;
  struct Seed {
    double value;
    std::array<double, 2> angles;
  };
  std::vector<Seed> seeds;
  for (int i = 0; i <= kGrid; ++i) {
    for (int j = 0; j <= (dims == 2 ? kGrid : 0); ++j) {
      std::array<double, 2> ang{i * cell, j * cell};
      seeds.push_back({eval(ang.data()), ang});
    }
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& x, const Seed& y) { return x.value > y.value; });
  seeds.resize(std::min<std::size_t>(seeds.size(), 4));

  double best = seeds.front().value;
  for (auto seed : seeds) {
    auto ang = seed.angles;
    double current = seed.value;
    for (int sweep = 0; sweep < 40; ++sweep) {
      const double before = current;
      for (std::size_t c = 0; c < dims; ++c) {
        const double lo = std::max(0.0, ang[c] - cell);
        const double hi = std::min(half_pi, ang[c] + cell);
        auto line = [&](double t) {
          auto trial = ang;
          trial[c] = t;
          return eval(trial.data());
        };
        const auto ext = golden_section_max(line, lo, hi, 1e-14);
        if (ext.value >= current) {
          current = ext.value;
          ang[c] = ext.argument;
        }
      }
      if (dims == 1 || current - before <= 1e-15 * std::max(1.0, std::abs(current))) break;
    }
    if (dims == 2) {
      for (int restart = 0; restart < 3; ++restart) {
        double polished;
        const auto found = nelder_mead_max(eval, ang, restart == 0 ? cell : 1e-3 * cell, polished);
        if (polished <= current) break;
        current = polished;
        ang = found;
      }
    }
    best = std::max(best, current);
  }
  return sign * best;
}

double profile_support(const ToricProfile& profile, ConstVec v) {
  if (v.size() != profile.n()) throw InvalidInput("profile_support: dimension mismatch");
  for (double c : v) {
    if (c < 0.0) throw InvalidInput("profile_support: v must be nonnegative");
  }
  switch (profile.shape()) {
    case ProfileShape::kSimplex:
    case ProfileShape::kBox:
    case ProfileShape::kLpOrthant: {
      const auto& r = profile.radii();
      std::vector<double> c(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) c[i] = r[i] * v[i];
      const double s = profile.power();
      // sup of a linear form over a nonconvex lp region is attained on its hull, the simplex
      return s <= 1.0 ? *std::max_element(c.begin(), c.end()) : lp_combine(c, conjugate_exponent(s));
    }
    case ProfileShape::kProduct: {
      const std::size_t na = profile.left()->n();
      const double a = profile_support(*profile.left(), v.subspan(0, na));
      const double b = profile_support(*profile.right(), v.subspan(na));
      return union_extremum(a, b, profile.product_exponent(), true);
    }
    case ProfileShape::kCustom:
      break;
  }
  bool zero = std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
  if (zero) return 0.0;
  return boundary_extremum(
      profile,
      [v](ConstVec w) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) s += v[i] * w[i];
        return s;
      },
      true);
}

double profile_face_value(const ToricProfile& profile, ConstVec v) {
  if (v.size() != profile.n()) throw InvalidInput("profile_face_value: dimension mismatch");
  for (double c : v) {
    if (!(c > 0.0)) throw InvalidInput("profile_face_value: v must be strictly positive");
  }
  switch (profile.shape()) {
    case ProfileShape::kSimplex:
    case ProfileShape::kBox:
    case ProfileShape::kLpOrthant: {
      const auto& r = profile.radii();
      std::vector<double> c(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) c[i] = r[i] * v[i];
      const double s = profile.power();
      if (s >= 1.0) return *std::min_element(c.begin(), c.end());
      // Lagrange minimizer on the curved face: power mean with exponent s/(s-1) < 0
      const double tau = s / (s - 1.0);
      double acc = c[0];
      for (std::size_t i = 1; i < c.size(); ++i) acc = power_combine(acc, c[i], tau);
      return acc;
    }
    case ProfileShape::kProduct: {
      const std::size_t na = profile.left()->n();
      const double a = profile_face_value(*profile.left(), v.subspan(0, na));
      const double b = profile_face_value(*profile.right(), v.subspan(na));
      return union_extremum(a, b, profile.product_exponent(), false);
    }
    case ProfileShape::kCustom:
      break;
  }
  return boundary_extremum(
      profile,
      [v](ConstVec w) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) s += v[i] * w[i];
        return s;
      },
      false);
}

namespace {

// Volume of Omega, which equals the volume of X_Omega.
std::optional<double> profile_volume(const ToricProfile& p) {
  switch (p.shape()) {
    case ProfileShape::kSimplex:
    case ProfileShape::kBox:
    case ProfileShape::kLpOrthant: {
      const double s = p.power();
      const double n = static_cast<double>(p.n());
      double v = 1.0;
      for (double r : p.radii()) v *= r;
      if (std::isinf(s)) return v;
      return v * std::exp(n * std::lgamma(1.0 + 1.0 / s) - std::lgamma(1.0 + n / s));
    }
    case ProfileShape::kProduct: {
      auto a = profile_volume(*p.left());
      auto b = profile_volume(*p.right());
      if (!a || !b) return std::nullopt;
      const double s = p.product_exponent();
      if (std::isinf(s)) return *a * *b;
      return gamma_ratio(static_cast<double>(p.left()->n()) / s,
                         static_cast<double>(p.right()->n()) / s) *
             *a * *b;
    }
    case ProfileShape::kCustom:
      return std::nullopt;
  }
  return std::nullopt;
}

double toric_support(const ToricProfile& p, ConstVec u);

// sup over Omega of sum |u_i| sqrt(w_i / pi)
double toric_support(const ToricProfile& p, ConstVec u) {
  const std::size_t n = p.n();
  std::vector<double> moduli(n);
  for (std::size_t i = 0; i < n; ++i) moduli[i] = std::hypot(u[2 * i], u[2 * i + 1]);
  switch (p.shape()) {
    case ProfileShape::kSimplex:
    case ProfileShape::kBox:
    case ProfileShape::kLpOrthant: {
      // X_Omega is the (2s)-product of discs B^2[r_i]
      for (std::size_t i = 0; i < n; ++i) moduli[i] *= std::sqrt(p.radii()[i] / std::numbers::pi);
      const double body_p = 2.0 * p.power();
      return body_p <= 1.0 ? *std::max_element(moduli.begin(), moduli.end())
                           : lp_combine(moduli, conjugate_exponent(body_p));
    }
    case ProfileShape::kProduct: {
      const std::size_t na = p.left()->n();
      const double a = toric_support(*p.left(), u.subspan(0, 2 * na));
      const double b = toric_support(*p.right(), u.subspan(2 * na));
      return union_extremum(a, b, 2.0 * p.product_exponent(), true);
    }
    case ProfileShape::kCustom:
      break;
  }
  if (std::all_of(moduli.begin(), moduli.end(), [](double m) { return m == 0.0; })) return 0.0;
  return boundary_extremum(
      p,
      [&moduli](ConstVec w) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) s += moduli[i] * std::sqrt(std::max(w[i], 0.0) / std::numbers::pi);
        return s;
      },
      true);
}

bool toric_smooth(const ToricProfile& p) {
  switch (p.shape()) {
    case ProfileShape::kSimplex:
    case ProfileShape::kBox:
    case ProfileShape::kLpOrthant:
      return p.power() > 0.5 && std::isfinite(p.power());
    case ProfileShape::kProduct: {
      const double body_p = 2.0 * p.product_exponent();
      return toric_smooth(*p.left()) && toric_smooth(*p.right()) && body_p > 1.0 &&
             std::isfinite(body_p);
    }
    case ProfileShape::kCustom:
      return false;
  }
  return false;
}

}  // namespace

BodyOracle toric_body(const ToricProfile& profile) {
  const std::size_t n = profile.n();
  BodyOracle::Parts parts;
  parts.dim = 2 * n;
  parts.gauge = [profile, n](ConstVec x) {
    std::vector<double> moment(n);
    for (std::size_t i = 0; i < n; ++i) {
      moment[i] = std::numbers::pi * (x[2 * i] * x[2 * i] + x[2 * i + 1] * x[2 * i + 1]);
    }
    return std::sqrt(profile.gauge_plus(moment));
  };
  parts.support = [profile](ConstVec u) { return toric_support(profile, u); };

  const bool lp = is_lp_family(profile);
  const double body_p = 2.0 * profile.power();
  if (lp && body_p > 1.0 && std::isfinite(body_p)) {
    const double q = conjugate_exponent(body_p);
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = std::sqrt(profile.radii()[i] / std::numbers::pi);
    parts.support_gradient = [c, q, profile](ConstVec u, MutVec out) {
      const double h = toric_support(profile, u);
      for (std::size_t i = 0; i < c.size(); ++i) {
        const double m = std::hypot(u[2 * i], u[2 * i + 1]);
        if (h == 0.0 || m == 0.0) {
          out[2 * i] = out[2 * i + 1] = 0.0;
          continue;
        }
        const double w = std::pow(c[i] * m / h, q - 1.0) * c[i] / m;
        out[2 * i] = w * u[2 * i];
        out[2 * i + 1] = w * u[2 * i + 1];
      }
    };
  }
  parts.kind = BodyKind::kToric;
  parts.closed_form_volume = profile_volume(profile);
  parts.smooth = toric_smooth(profile);
  parts.label = "X_" + profile.label();
  parts.parameters = profile.radii();

  if (profile.shape() != ProfileShape::kCustom || n <= 3) {
    if (profile.is_convex()) {
      double c1 = kInf;
      std::vector<double> e(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        e[i] = 1.0;
        c1 = std::min(c1, profile_support(profile, e));
        e[i] = 0.0;
      }
      parts.capacity_hint = c1;
    } else if (profile.is_concave()) {
      const std::vector<double> ones(n, 1.0);
      parts.capacity_hint = profile_face_value(profile, ones);
    }
  }
  return BodyOracle(std::move(parts));
}

std::optional<std::string> find_convexity_violation(const ToricProfile& profile,
                                                    std::size_t samples, std::uint64_t seed,
                                                    double rel_tol) {
  const std::size_t n = profile.n();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> signed_unit(-1.0, 1.0);
  std::vector<double> x(n), y(n), mid(n), ax(n), ay(n), amid(n), sum(n), scaled(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = signed_unit(rng);
      y[i] = signed_unit(rng);
      mid[i] = 0.5 * (x[i] + y[i]);
      ax[i] = std::abs(x[i]);
      ay[i] = std::abs(y[i]);
      amid[i] = std::abs(mid[i]);
      sum[i] = ax[i] + ay[i];
    }
    const double gx = profile.gauge_plus(ax);
    const double gy = profile.gauge_plus(ay);
    const double lambda = 0.1 + 9.9 * unit(rng);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = lambda * ax[i];
    const double gs = profile.gauge_plus(scaled);
    if (std::abs(gs - lambda * gx) > rel_tol * std::max(1.0, lambda * gx)) {
      return "gauge_plus is not positively 1-homogeneous";
    }
    if (profile.is_convex()) {
      // midpoint convexity of the unconditional extension
      if (profile.gauge_plus(amid) > 0.5 * (gx + gy) * (1.0 + rel_tol) + 1e-15) {
        return "convex tag fails sampled midpoint convexity";
      }
    }
    if (profile.is_concave()) {
      if (profile.gauge_plus(sum) < (gx + gy) * (1.0 - rel_tol) - 1e-15) {
        return "concave tag fails sampled reverse triangle inequality";
      }
    }
  }
  return std::nullopt;
}

}  // namespace caplab
