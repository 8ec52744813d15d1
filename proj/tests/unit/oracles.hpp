#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

// Maximises <x, u> / gauge(x) by random search followed by an adaptive
// hill climb. The ratio has a single local maximum on a convex body, so the
// climb finds h(u) without using the support evaluator.
inline double dual_pairing_max(const std::function<double(const std::vector<double>&)>& gauge,
                               const std::vector<double>& u, std::uint64_t seed) {
  const std::size_t dim = u.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto ratio = [&](const std::vector<double>& x) {
    double d = 0.0;
    for (std::size_t i = 0; i < dim; ++i) d += x[i] * u[i];
    return d / gauge(x);
  };
  std::vector<double> best(dim), trial(dim);
  double best_value = -INFINITY;
  for (int s = 0; s < 2000; ++s) {
    for (double& v : trial) v = g(rng);
    const double r = ratio(trial);
    if (r > best_value) {
      best_value = r;
      best = trial;
    }
  }
  double sigma = 0.3;
  int failures = 0;
  while (sigma > 1e-10) {
    const double scale = gauge(best);
    for (std::size_t i = 0; i < dim; ++i) trial[i] = best[i] / scale + sigma * g(rng);
    const double r = ratio(trial);
    if (r > best_value) {
      best_value = r;
      best = trial;
      failures = 0;
    } else if (++failures > 400) {
      sigma *= 0.5;
      failures = 0;
    }
  }
  return best_value;
}
