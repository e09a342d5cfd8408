// SPDX-License-Identifier: Apache-2.0
#include "kpzlab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kpzlab {

QuadratureRule gauss_legendre(int order, double a, double b) {
  if (order < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
  if (!(a < b)) throw std::invalid_argument("gauss_legendre: need a < b");

  QuadratureRule rule;
  rule.order = order;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(order);
  rule.weights.resize(order);

  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_n(t).
    long double t = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (order + 0.5L));
    long double pp = 0.0L;
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = t;
      for (int j = 2; j <= order; ++j) {
        const long double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = order * (t * p1 - p0) / (t * t - 1.0L);
      const long double dt = p1 / pp;
      t -= dt;
      if (std::fabs(dt) < 1e-19L) {
        converged = true;
        break;
      }
    }
    if (!converged) throw std::runtime_error("gauss_legendre: Newton iteration failed");
    const long double w = 2.0L / ((1.0L - t * t) * pp * pp);
    const long double mid = 0.5L * (static_cast<long double>(a) + b);
    const long double hw = 0.5L * (static_cast<long double>(b) - a);
    rule.nodes[i] = static_cast<double>(mid - hw * t);
    rule.nodes[order - 1 - i] = static_cast<double>(mid + hw * t);
    rule.weights[i] = static_cast<double>(hw * w);
    rule.weights[order - 1 - i] = static_cast<double>(hw * w);
  }
  return rule;
}

}  // namespace kpzlab
