#include "nilquant/quadrature.hpp"

#include "nilquant/types.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace nilquant {

namespace {

GaussRule compute_rule(int m) {
  GaussRule r;
  r.nodes.resize(static_cast<std::size_t>(m));
  r.weights.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < (m + 1) / 2; ++i) {
    // Newton on P_m from the Chebyshev-like initial guess.
    double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_m(x), p0 = P_{m-1}(x)
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]
    r.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
    r.nodes[static_cast<std::size_t>(m - 1 - i)] = 0.5 * (1.0 + x);
    r.weights[static_cast<std::size_t>(i)] = 0.5 * w;
    r.weights[static_cast<std::size_t>(m - 1 - i)] = 0.5 * w;
  }
  return r;
}

}  // namespace

GaussRule gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) it = cache.emplace(m, compute_rule(m)).first;
  return it->second;
}

}  // namespace nilquant
