// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace kpzlab {

struct AiryValue {
  double ai;
  double ai_prime;
};

/// Ai(x) and Ai'(x) for |x| <= 200.
///
/// Maclaurin series (long double, compensated) for |x| <= 6.2, Taylor steps
/// from tabulated anchor values for 6.2 < |x| < 8.6, Poincare asymptotic
/// expansions at optimal truncation beyond. Absolute error is below 1e-13
/// for x >= -20 and below 1e-12 down to x = -40 (checked against an
/// independent reference in the test suite).
AiryValue airy(double x);
double airy_ai(double x);
double airy_ai_prime(double x);

/// Airy kernel (Ai(x)Ai'(y) - Ai'(x)Ai(y)) / (x - y); switches to the
/// midpoint diagonal form with second-order correction when |x-y| < 1e-4.
double airy_kernel(double x, double y);

/// Diagonal value Ai'(x)^2 - x Ai(x)^2.
double airy_kernel_diag(double x);

}  // namespace kpzlab
