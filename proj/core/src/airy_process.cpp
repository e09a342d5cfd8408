// SPDX-License-Identifier: Apache-2.0
#include "kpzlab/airy_process.hpp"

#include <cmath>
#include <stdexcept>

#include "kpzlab/matrix_models.hpp"
#include "kpzlab/quadrature.hpp"

namespace kpzlab {

namespace {

// Rescaled depth below which points are discarded by default: keeps
// e^{alpha lambda} factors under ~1e-12.
double default_cutoff(double alpha) { return -12.0 * std::log(10.0) / alpha; }

// Semicircle estimate of the rescaled depth of the k-th edge point, used to
// size the corner block.
double depth_estimate(int k) {
  return std::pow(1.5 * M_PI * (k + 1), 2.0 / 3.0) + 6.0;
}

AiryPointSample edge_points(int beta_int, double depth, int n_sim, RandomStream& rs) {
  const TridiagonalSym t = sample_dumitriu_edelman(n_sim, beta_int, rs);
  const SpectralMeasureAtE1 spec = corner_spectral_at_e1(t, depth);
  const double scale = std::pow(static_cast<double>(n_sim), 1.0 / 6.0);
  const double edge = 2.0 * std::sqrt(static_cast<double>(n_sim));
  AiryPointSample out;
  out.beta = beta_int;
  out.n_sim = n_sim;
  out.points.resize(spec.eigenvalues.size());
  for (int j = 0; j < spec.eigenvalues.size(); ++j) {
    out.points[j] = scale * (spec.eigenvalues[j] - edge);
  }
  return out;
}

}  // namespace

AiryPointSample sample_airy_edge(int beta, int k, int n_sim, RandomStream& rs) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("sample_airy_edge: beta must be 1 or 2");
  if (n_sim < 2) throw std::invalid_argument("sample_airy_edge: n_sim must be >= 2");
  if (k < 1 || k > n_sim) {
    throw std::invalid_argument("sample_airy_edge: need 1 <= k <= n_sim");
  }
  AiryPointSample out = edge_points(beta, depth_estimate(k), n_sim, rs);
  if (out.points.size() > k) out.points.conservativeResize(k);
  out.cutoff_level = out.points[out.points.size() - 1];
  return out;
}

AiryPointSample sample_airy_edge_above(int beta, double cutoff, int n_sim, RandomStream& rs) {
  if (beta != 1 && beta != 2) {
    throw std::invalid_argument("sample_airy_edge_above: beta must be 1 or 2");
  }
  if (!(cutoff < 0.0)) throw std::invalid_argument("sample_airy_edge_above: cutoff must be < 0");
  AiryPointSample out = edge_points(beta, -cutoff + 4.0, n_sim, rs);
  int k = 0;
  while (k < out.points.size() && out.points[k] >= cutoff) ++k;
  if (k < 1) k = 1;  // always keep the top point
  out.points.conservativeResize(k);
  out.cutoff_level = out.points[k - 1];
  return out;
}

DecoratedSample decorate(const AiryPointSample& sample, int a_max, RandomStream& rs) {
  if (a_max < 1) throw std::invalid_argument("decorate: a_max must be >= 1");
  DecoratedSample out;
  out.points = sample;
  const int k = static_cast<int>(sample.points.size());
  out.u.resize(k, a_max);
  for (int i = 0; i < k; ++i) {
    for (int a = 0; a < a_max; ++a) out.u(i, a) = rs.gaussian();
  }
  if (sample.beta == 2) {
    out.v.resize(k, a_max);
    for (int i = 0; i < k; ++i) {
      for (int a = 0; a < a_max; ++a) out.v(i, a) = rs.gaussian();
    }
  }
  return out;
}

DecoratedIntegral decorated_integral_exp(const DecoratedSample& dec, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("decorated_integral_exp: alpha must be > 0");
  const int k = static_cast<int>(dec.points.points.size());
  const int a_max = static_cast<int>(dec.u.cols());
  DecoratedIntegral out;
  out.matrix = Eigen::MatrixXcd::Zero(a_max, a_max);
  for (int i = 0; i < k; ++i) {
    const double f = std::exp(alpha * dec.points.points[i]);
    if (dec.points.beta == 1) {
      for (int a = 0; a < a_max; ++a) {
        for (int b = 0; b < a_max; ++b) {
          out.matrix(a, b) += f * dec.u(i, a) * dec.u(i, b);
        }
      }
    } else {
      for (int a = 0; a < a_max; ++a) {
        const std::complex<double> wa(dec.u(i, a), dec.v(i, a));
        for (int b = 0; b < a_max; ++b) {
          const std::complex<double> wb(dec.u(i, b), dec.v(i, b));
          out.matrix(a, b) += 0.5 * f * wa * std::conj(wb);
        }
      }
    }
  }
  out.truncation_bound = tail_truncation_bound(alpha, std::min(dec.points.cutoff_level, -1e-6));
  return out;
}

double tail_density_integral(double alpha, double level) {
  if (!(alpha > 0.0)) throw std::invalid_argument("tail_density_integral: alpha must be > 0");
  // (1/pi) int_{|L|}^{inf} e^{-alpha t} sqrt(t) dt, truncated when the
  // integrand has decayed by e^{-60}.
  const double lo = -level;
  const double hi = lo + 62.0 / alpha;
  const QuadratureRule rule = gauss_legendre(96, lo, hi);
  const double val = rule.integrate(
      [&](double t) { return std::exp(-alpha * t) * std::sqrt(std::max(t, 0.0)); });
  return val / M_PI;
}

double tail_truncation_bound(double alpha, double cutoff_level) {
  if (!(cutoff_level < 0.0)) {
    throw std::invalid_argument("tail_truncation_bound: cutoff level must be < 0");
  }
  return tail_density_integral(alpha, cutoff_level);
}

double kpz_value(const DecoratedSample& dec, double alpha) {
  const int k = static_cast<int>(dec.points.points.size());
  double acc = 0.0;
  if (dec.points.beta == 1) {
    for (int i = 0; i < k; ++i) {
      acc += 2.0 * dec.u(i, 0) * dec.u(i, 0) * std::exp(alpha * dec.points.points[i]);
    }
  } else {
    for (int i = 0; i < k; ++i) {
      acc += 0.5 * (dec.u(i, 0) * dec.u(i, 0) + dec.v(i, 0) * dec.v(i, 0)) *
             std::exp(alpha * dec.points.points[i]);
    }
  }
  return acc;
}

KpzSample kpz_sample(int beta, double alpha, const KpzParams& params, RandomStream& rs) {
  if (!(alpha > 0.0)) throw std::invalid_argument("kpz_sample: alpha must be > 0");
  AiryPointSample points =
      params.k > 0 ? sample_airy_edge(beta, params.k, params.n_sim, rs)
                   : sample_airy_edge_above(beta, default_cutoff(alpha), params.n_sim, rs);
  DecoratedSample dec = decorate(points, 1, rs);
  KpzSample out;
  out.value = kpz_value(dec, alpha);
  out.tail_bound = tail_truncation_bound(alpha, std::min(points.cutoff_level, -1e-6));
  return out;
}

}  // namespace kpzlab
