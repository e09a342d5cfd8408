// SPDX-License-Identifier: Apache-2.0
#include "kpzlab/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace kpzlab {

namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3), -Ai'(0) = 3^{-1/3}/Gamma(1/3).
constexpr long double kAi0 = 0.355028053887817239260063186004183176398L;
constexpr long double kAip0 = 0.258819403792806798405183560189203963479L;
constexpr long double kSqrtPi = 1.7724538509055160272981674833411451828L;
constexpr long double kQuarterPi = 0.785398163397448309615660845819875721049L;

struct AiryValueL {
  long double ai;
  long double ai_prime;
};

// Power series about 0. The two ODE solutions f, g and their derivatives
// are accumulated with compensated summation; cancellation between the
// c1*f and c2*g combinations limits this branch to |x| <= ~6.5.
AiryValueL airy_series(long double x) {
  if (x == 0.0L) return {kAi0, -kAip0};
  long double f = 1.0L, g = x, fp = 0.0L, gp = 1.0L;
  long double cf = 0.0L, cg = 0.0L, cfp = 0.0L, cgp = 0.0L;  // Kahan carries
  const long double x3 = x * x * x;
  long double a = 1.0L;  // f term
  long double b = x;     // g term
  auto add = [](long double& sum, long double& carry, long double term) {
    const long double y = term - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  };
  for (int k = 0; k < 200; ++k) {
    a *= x3 / ((3 * k + 2) * (3 * k + 3));
    b *= x3 / ((3 * k + 3) * (3 * k + 4));
    add(f, cf, a);
    add(g, cg, b);
    add(fp, cfp, a * (3 * (k + 1)) / x);
    add(gp, cgp, b * (3 * (k + 1) + 1) / x);
    if (std::fabs(a) < 1e-27L * (std::fabs(f) + 1.0L) &&
        std::fabs(b) < 1e-27L * (std::fabs(g) + 1.0L)) {
      break;
    }
  }
  return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

// Anchor values for the Taylor branch, 6.2 < |x| < 8.6.
struct Anchor {
  long double x0, ai, aip;
};
constexpr Anchor kAnchors[] = {
    {6.6L, 2.156599952596919985718758823674161827865e-6L,
     -5.619319444345785815153477324224731508748e-6L},
    {7.4L, 2.52717193926675244494493438064258909282e-7L,
     -6.957555402080593073614508455258279037732e-7L},
    {8.2L, 2.639741834028278329331716510965065107679e-8L,
     -7.637532984186179127514101096379813787103e-8L},
    {-6.6L, -0.1635264627277295520850737658185246510069L,
     -0.8071192494773918471688572569199006786605L},
    {-7.4L, 0.341323752232338641093037640552835053383L,
     0.0702763236432659523173352929104915504217L},
    {-8.2L, -0.2215994548036044151726632786749787177745L,
     0.7065986978628053033542256126500015401484L},
};

// Taylor step y(x0+h) from (Ai, Ai') at the nearest anchor, coefficients
// from the recurrence (k+1)(k+2) c_{k+2} = x0 c_k + c_{k-1} of y'' = x y.
AiryValueL airy_anchored(long double x) {
  const Anchor* best = &kAnchors[0];
  long double best_d = 1e30L;
  for (const Anchor& a : kAnchors) {
    const long double d = std::fabs(x - a.x0);
    if (d < best_d) {
      best_d = d;
      best = &a;
    }
  }
  const long double x0 = best->x0;
  const long double h = x - x0;
  long double ck_m1 = 0.0L;       // c_{k-1}
  long double ck = best->ai;      // c_k
  long double ck_p1 = best->aip;  // c_{k+1}
  long double hk = 1.0L;          // h^k
  long double y = 0.0L, yp = 0.0L;
  for (int k = 0; k < 64; ++k) {
    y += ck * hk;
    yp += (k + 1) * ck_p1 * hk;
    const long double ck_p2 = (x0 * ck + ck_m1) / ((k + 1) * (k + 2));
    ck_m1 = ck;
    ck = ck_p1;
    ck_p1 = ck_p2;
    hk *= h;
    if (k > 10 && std::fabs(ck * hk) < 1e-28L) break;
  }
  return {y, yp};
}

// u_k, v_k coefficient streams of the Poincare expansions (DLMF 9.7).
struct UV {
  long double u, v;
};
inline UV uv_next(const UV& prev, int k) {
  const long double u =
      prev.u * (6.0L * k - 5.0L) * (6.0L * k - 3.0L) * (6.0L * k - 1.0L) /
      (216.0L * k * (2.0L * k - 1.0L));
  const long double v = u * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
  return {u, v};
}

AiryValueL airy_asymptotic_pos(long double x) {
  const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
  long double su = 1.0L, sv = 1.0L;
  UV uv{1.0L, 1.0L};
  long double pow_zeta = 1.0L;
  long double prev_mag = 1e30L;
  long double sign = -1.0L;
  for (int k = 1; k < 60; ++k) {
    uv = uv_next(uv, k);
    pow_zeta *= zeta;
    const long double tu = uv.u / pow_zeta;
    if (std::fabs(tu) >= prev_mag) break;  // optimal truncation
    prev_mag = std::fabs(tu);
    su += sign * tu;
    sv += sign * uv.v / pow_zeta;
    sign = -sign;
    if (prev_mag < 1e-24L) break;
  }
  const long double x14 = std::sqrt(std::sqrt(x));
  const long double pre = std::exp(-zeta) / (2.0L * kSqrtPi);
  return {pre / x14 * su, -pre * x14 * sv};
}

AiryValueL airy_asymptotic_neg(long double x) {
  const long double z = -x;
  const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
  // Even/odd sub-series with signs (-1)^{k/2} / (-1)^{(k-1)/2}.
  long double su_even = 1.0L, su_odd = 0.0L, sv_even = 1.0L, sv_odd = 0.0L;
  UV uv{1.0L, 1.0L};
  long double pow_zeta = 1.0L;
  long double prev_mag = 1e30L;
  for (int k = 1; k < 80; ++k) {
    uv = uv_next(uv, k);
    pow_zeta *= zeta;
    const long double tu = uv.u / pow_zeta;
    if (std::fabs(tu) >= prev_mag) break;
    prev_mag = std::fabs(tu);
    const int m = k & 3;
    const long double s = (m == 0 || m == 1) ? 1.0L : -1.0L;
    if (k % 2 == 0) {
      su_even += s * tu;
      sv_even += s * uv.v / pow_zeta;
    } else {
      su_odd += s * tu;
      sv_odd += s * uv.v / pow_zeta;
    }
    if (prev_mag < 1e-24L) break;
  }
  const long double c = std::cos(zeta - kQuarterPi);
  const long double s = std::sin(zeta - kQuarterPi);
  const long double z14 = std::sqrt(std::sqrt(z));
  const long double ai = (c * su_even + s * su_odd) / (kSqrtPi * z14);
  const long double aip = (s * sv_even - c * sv_odd) * z14 / kSqrtPi;
  return {ai, aip};
}

}  // namespace

AiryValue airy(double x) {
  if (!(std::fabs(x) <= 200.0)) {
    throw std::domain_error("airy: |x| must be <= 200");
  }
  const long double xl = x;
  AiryValueL r;
  if (std::fabs(x) <= 6.2) {
    r = airy_series(xl);
  } else if (std::fabs(x) < 8.6) {
    r = airy_anchored(xl);
  } else if (x > 0) {
    r = airy_asymptotic_pos(xl);
  } else {
    r = airy_asymptotic_neg(xl);
  }
  return {static_cast<double>(r.ai), static_cast<double>(r.ai_prime)};
}

double airy_ai(double x) { return airy(x).ai; }
double airy_ai_prime(double x) { return airy(x).ai_prime; }

double airy_kernel_diag(double x) {
  const AiryValue v = airy(x);
  return v.ai_prime * v.ai_prime - x * v.ai * v.ai;
}

double airy_kernel(double x, double y) {
  const double h = x - y;
  if (std::fabs(h) < 1e-4) {
    // Midpoint diagonal form; the h^2 coefficient follows from the odd-in-h
    // expansion of the numerator together with Ai'' = x Ai.
    const double m = 0.5 * (x + y);
    const AiryValue v = airy(m);
    const double diag = v.ai_prime * v.ai_prime - m * v.ai * v.ai;
    const double c3 = v.ai * v.ai_prime / 12.0 + m / 6.0 * diag;
    return diag + h * h * c3;
  }
  const AiryValue vx = airy(x);
  const AiryValue vy = airy(y);
  return (vx.ai * vy.ai_prime - vx.ai_prime * vy.ai) / h;
}

}  // namespace kpzlab
