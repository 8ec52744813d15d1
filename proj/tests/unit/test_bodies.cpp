#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "caplab/bodies.hpp"
#include "caplab/errors.hpp"
#include "caplab/numeric.hpp"
#include "oracles.hpp"

using namespace caplab;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<double> v(dim);
  for (double& x : v) x = g(rng);
  return v;
}

double climbed_support(const BodyOracle& body, const std::vector<double>& u, std::uint64_t seed) {
  return dual_pairing_max([&](const std::vector<double>& x) { return body.gauge(x); }, u, seed);
}

BodyOracle segment(double w) { return make_box({w}); }

}  // namespace

TEST_CASE("standard ball has the right radius and volume") {
  const auto ball = make_ball(1, 1.0);
  const double r = std::sqrt(1.0 / std::numbers::pi);
  const std::vector<double> x{r, 0.0};
  CHECK(ball.gauge(x) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(*ball.closed_form_volume() == doctest::Approx(1.0).epsilon(1e-14));
  const auto b4 = make_ball(2, 2.0);
  CHECK(*b4.closed_form_volume() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(*b4.capacity_hint() == doctest::Approx(2.0));
}

TEST_CASE("ellipsoid, polydisc and box volumes") {
  CHECK(*make_ellipsoid({1, 2}).closed_form_volume() == doctest::Approx(1.0));
  CHECK(*make_polydisc({1, 2}).closed_form_volume() == doctest::Approx(2.0));
  CHECK(*make_box({1, 1}).closed_form_volume() == doctest::Approx(4.0));
  CHECK(*make_box({1, 0.5}).capacity_hint() == doctest::Approx(2.0));
}

TEST_CASE("support equals the maximum of the dual pairing") {
  std::mt19937_64 rng(7);
  const std::vector<BodyOracle> bodies = {make_ball(1, 1.0), make_ellipsoid({1, 2}),
                                          make_polydisc({1, 3}), make_box({0.5, 2.0, 1.0})};
  for (const auto& body : bodies) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto u = random_vector(rng, body.dim());
      const double h = body.support(u);
      const double climbed = climbed_support(body, u, 100 + trial);
      // the climb converges slowly onto the kinks of polydiscs and boxes
      CHECK(climbed <= h * (1.0 + 1e-12));
      CHECK(climbed >= h * (1.0 - (body.smooth() ? 1e-6 : 1e-4)));
    }
  }
}

TEST_CASE("gauge and support are positively homogeneous") {
  std::mt19937_64 rng(3);
  const auto body = make_ellipsoid({1.5, 0.7, 2.0});
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_vector(rng, body.dim());
    const double g = body.gauge(x);
    const double h = body.support(x);
    for (double& v : x) v *= 2.5;
    CHECK(body.gauge(x) == doctest::Approx(2.5 * g).epsilon(1e-12));
    CHECK(body.support(x) == doctest::Approx(2.5 * h).epsilon(1e-12));
  }
}

TEST_CASE("p-product gauge examples") {
  PProductSpec inf{kInf, {segment(1.0), segment(1.0)}};
  const std::vector<double> x{0.5, 0.9};
  CHECK(gauge_p_product(inf, x) == doctest::Approx(0.9).epsilon(1e-14));

  PProductSpec two{2.0, {segment(1.0), segment(1.0)}};
  const std::vector<double> d{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  CHECK(gauge_p_product(two, d) == doctest::Approx(1.0).epsilon(1e-14));

  PProductSpec one{1.0, {segment(1.0), segment(1.0)}};
  const std::vector<double> y{0.3, 0.3};
  CHECK(gauge_p_product(one, y) == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("p-product support examples") {
  PProductSpec one{1.0, {segment(2.0), segment(3.0)}};
  const std::vector<double> u{1.0, 1.0};
  CHECK(support_p_product(one, u) == doctest::Approx(3.0).epsilon(1e-14));
  PProductSpec inf{kInf, {segment(2.0), segment(3.0)}};
  CHECK(support_p_product(inf, u) == doctest::Approx(5.0).epsilon(1e-14));
  PProductSpec two{2.0, {segment(2.0), segment(3.0)}};
  CHECK(support_p_product(two, u) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-14));
}

TEST_CASE("p-product support equals the maximum of the dual pairing") {
  // h(u, v) = max over lambda^p + mu^p <= 1 of lambda h_K(u) + mu h_T(v), with
  // the factor supports from the hill climb and the outer maximum by ternary
  // search on t = lambda^p.
  std::mt19937_64 rng(11);
  const auto k = make_ellipsoid({1, 2});
  const auto t = make_ball(1, 1.5);
  for (double p : {1.0, 1.5, 3.0, kInf}) {
    const auto body = make_p_product({p, {k, t}});
    for (int trial = 0; trial < 3; ++trial) {
      const auto u = random_vector(rng, body.dim());
      const std::vector<double> uk(u.begin(), u.begin() + 4), ut(u.begin() + 4, u.end());
      const double hk = climbed_support(k, uk, 200 + trial);
      const double ht = climbed_support(t, ut, 300 + trial);
      auto f = [&](double s) {
        if (std::isinf(p)) return hk + ht;
        return std::pow(s, 1.0 / p) * hk + std::pow(1.0 - s, 1.0 / p) * ht;
      };
      double lo = 0.0, hi = 1.0;
      for (int iter = 0; iter < 200; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2)) lo = m1;
        else hi = m2;
      }
      const double oracle = std::max({f(0.0), f(1.0), f(0.5 * (lo + hi))});
      CHECK(oracle == doctest::Approx(body.support(u)).epsilon(1e-9));
    }
  }
}

TEST_CASE("p-product volume closed forms") {
  PProductSpec squares{1.0, {segment(1.0), segment(1.0)}};
  CHECK(volume_exact_p_product(squares) == doctest::Approx(2.0).epsilon(1e-14));
  const double r = std::sqrt(2.0);
  PProductSpec balls{2.0, {make_ball(2, r), make_ball(2, r)}};
  CHECK(volume_exact_p_product(balls) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  PProductSpec cube{kInf, {make_box({1, 2}), make_box({3})}};
  CHECK(volume_exact_p_product(cube) == doctest::Approx(8.0 * 6.0).epsilon(1e-14));
}

TEST_CASE("p-product is associative and symmetric") {
  std::mt19937_64 rng(5);
  const auto a = make_ellipsoid({1, 2});
  const auto b = make_ball(1, 0.7);
  const auto c = make_polydisc({1.3});
  for (double p : {1.0, 1.7, 2.0, 4.0, kInf}) {
    const auto left = make_p_product({p, {make_p_product({p, {a, b}}), c}});
    const auto right = make_p_product({p, {a, make_p_product({p, {b, c}})}});
    const auto flat = make_p_product({p, {a, b, c}});
    for (int trial = 0; trial < 50; ++trial) {
      const auto x = random_vector(rng, flat.dim());
      CHECK(left.gauge(x) == doctest::Approx(right.gauge(x)).epsilon(1e-12));
      CHECK(left.gauge(x) == doctest::Approx(flat.gauge(x)).epsilon(1e-12));
      CHECK(left.support(x) == doctest::Approx(right.support(x)).epsilon(1e-12));
    }
    CHECK(*left.closed_form_volume() == doctest::Approx(*right.closed_form_volume()).epsilon(1e-12));
  }
  for (double p : {1.0, 3.0}) {
    const auto ab = make_p_product({p, {make_box({1}), make_box({2})}});
    const auto ba = make_p_product({p, {make_box({2}), make_box({1})}});
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_vector(rng, 2);
      const std::vector<double> swapped{x[1], x[0]};
      CHECK(ab.gauge(x) == doctest::Approx(ba.gauge(swapped)).epsilon(1e-14));
    }
  }
}

TEST_CASE("p-product gauge decreases in p") {
  std::mt19937_64 rng(9);
  const std::vector<double> ps{1.0, 1.5, 2.0, 3.0, 8.0, kInf};
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_vector(rng, 4);
    double previous = kInf;
    for (double p : ps) {
      const auto body = make_p_product({p, {make_ball(1, 1.0), make_ellipsoid({2})}});
      const double g = body.gauge(x);
      CHECK(g <= previous * (1.0 + 1e-12));
      previous = g;
    }
  }
}

TEST_CASE("Monte Carlo volume agrees with the closed form") {
  for (double p : {1.0, 2.5, kInf}) {
    const auto body = make_p_product({p, {make_ellipsoid({1, 2}), make_ball(1, 1.0)}});
    const auto mc = volume_monte_carlo(body, 200000, 17);
    CHECK(std::abs(mc.mean - *body.closed_form_volume()) <= 4.0 * mc.standard_error);
    CHECK(mc.samples == 200000);
  }
}

TEST_CASE("Monte Carlo volume is reproducible for a fixed seed") {
  const auto body = make_ellipsoid({1, 1});
  const auto a = volume_monte_carlo(body, 10000, 3);
  const auto b = volume_monte_carlo(body, 10000, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.standard_error == b.standard_error);
}

TEST_CASE("invariant audit accepts standard bodies and catches a broken one") {
  CHECK_FALSE(find_invariant_violation(make_ellipsoid({1, 2}), 100, 1).has_value());
  CHECK_FALSE(find_invariant_violation(make_p_product({1.5, {make_ball(1, 1), make_box({1, 1})}}), 100, 1)
                  .has_value());
  // gauge of the unit disc but support of a disc half as large
  const auto broken = make_custom_body(
      2, [](ConstVec x) { return std::hypot(x[0], x[1]); },
      [](ConstVec u) { return 0.5 * std::hypot(u[0], u[1]); });
  CHECK(find_invariant_violation(broken, 100, 1).has_value());
  const auto not_homogeneous = make_custom_body(
      2, [](ConstVec x) { return x[0] * x[0] + x[1] * x[1]; },
      [](ConstVec u) { return std::hypot(u[0], u[1]); });
  CHECK(find_invariant_violation(not_homogeneous, 100, 1).has_value());
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(make_ball(0, 1.0), InvalidSpec);
  CHECK_THROWS_AS(make_ball(1, -1.0), InvalidSpec);
  CHECK_THROWS_AS(make_ellipsoid({1.0, -2.0}), InvalidSpec);
  CHECK_THROWS_AS(make_polydisc({}), InvalidSpec);
  CHECK_THROWS_AS(make_p_product({0.5, {make_ball(1, 1), make_ball(1, 1)}}), InvalidSpec);
  const auto ball = make_ball(1, 1.0);
  const std::vector<double> wrong(3, 1.0);
  CHECK_THROWS_AS(ball.gauge(wrong), InvalidInput);
}

TEST_CASE("lp_combine handles the endpoints") {
  const std::vector<double> v{3.0, 4.0};
  CHECK(lp_combine(v, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(lp_combine(v, 1.0) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(lp_combine(v, kInf) == 4.0);
}
