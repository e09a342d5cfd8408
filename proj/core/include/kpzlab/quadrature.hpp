// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace kpzlab {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 0.0;
  int order = 0;

  template <typename F>
  double integrate(F&& f) const {
    double acc = 0.0, carry = 0.0;
    for (int i = 0; i < order; ++i) {
      const double term = weights[i] * f(nodes[i]) - carry;
      const double next = acc + term;
      carry = (next - acc) - term;
      acc = next;
    }
    return acc;
  }
};

/// Gauss-Legendre rule on [a, b]; nodes by Newton iteration on P_n.
/// order >= 2, a < b. Exact for polynomials of degree <= 2*order - 1.
QuadratureRule gauss_legendre(int order, double a, double b);

}  // namespace kpzlab
