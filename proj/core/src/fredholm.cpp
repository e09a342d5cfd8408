// SPDX-License-Identifier: Apache-2.0
#include "kpzlab/fredholm.hpp"

#include <cmath>
#include <stdexcept>

#include "kpzlab/airy_process.hpp"
#include "kpzlab/parallel.hpp"
#include "kpzlab/special_functions.hpp"

namespace kpzlab {

Eigen::MatrixXd kernel_matrix(const KernelFn& k, const QuadratureRule& rule) {
  const int n = rule.order;
  Eigen::VectorXd sqw(n);
  for (int i = 0; i < n; ++i) sqw[i] = std::sqrt(rule.weights[i]);
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double v = sqw[i] * k(rule.nodes[i], rule.nodes[j]) * sqw[j];
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

namespace {

double det_one_minus(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("fredholm_det: eigenvalue factorization failed");
  }
  double log_abs = 0.0;
  double sign = 1.0;
  for (int i = 0; i < a.rows(); ++i) {
    const double f = 1.0 - es.eigenvalues()[i];
    if (f == 0.0) return 0.0;
    if (f < 0.0) sign = -sign;
    log_abs += std::log(std::fabs(f));
  }
  return sign * std::exp(log_abs);
}

}  // namespace

double fredholm_det(const KernelFn& k, const QuadratureRule& rule) {
  return det_one_minus(kernel_matrix(k, rule));
}

double tracy_widom_f2(double s, int order) {
  if (!(s >= -10.0 && s <= 6.0)) {
    throw std::domain_error("tracy_widom_f2: s must lie in [-10, 6]");
  }
  if (order < 2) throw std::invalid_argument("tracy_widom_f2: order must be >= 2");
  const QuadratureRule rule = gauss_legendre(order, s, s + 16.0);
  return fredholm_det([](double x, double y) { return airy_kernel(x, y); }, rule);
}

TracyWidomMoments tracy_widom_f2_moments(int outer_order, int inner_order) {
  // mean = int_0^inf [1 - F2(s) - F2(-s)] ds,
  // E X^2 = 2 int_0^inf s [1 - F2(s) + F2(-s)] ds; tails beyond [-10, 10]
  // are below 1e-8 of either integrand.
  const QuadratureRule rule = gauss_legendre(outer_order, 0.0, 10.0);
  double mean = 0.0, second = 0.0;
  for (int i = 0; i < rule.order; ++i) {
    const double s = rule.nodes[i];
    const double f_pos = s <= 6.0 ? tracy_widom_f2(s, inner_order) : 1.0;
    const double f_neg = tracy_widom_f2(-s, inner_order);
    mean += rule.weights[i] * (1.0 - f_pos - f_neg);
    second += rule.weights[i] * 2.0 * s * (1.0 - f_pos + f_neg);
  }
  return {mean, second - mean * mean};
}

double laplace_rhs_beta2(double u, double alpha, int order) {
  if (!(u >= 0.0)) throw std::invalid_argument("laplace_rhs_beta2: u must be >= 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("laplace_rhs_beta2: alpha must be > 0");
  if (u == 0.0) return 1.0;

  // Lower end: phi ~ u e^{alpha l}, weighted kernel mass below the cut is
  // under ~1e-13. Upper end: the kernel beats e^{alpha l} once l is past
  // (alpha/2)^2. Hard floor [-40, 16].
  const double lo = std::min(-40.0, -(std::log(std::max(u, 1e-300)) + 32.0) / alpha);
  const double hi = 16.0 + 0.25 * alpha * alpha + alpha;
  if (order <= 0) {
    const double phase = 2.0 / 3.0 * std::pow(-lo, 1.5);  // oscillation span
    order = std::max(80, static_cast<int>(0.45 * phase) + 48);
  }
  const QuadratureRule rule = gauss_legendre(order, lo, hi);

  Eigen::VectorXd sqphi(rule.order);
  for (int i = 0; i < rule.order; ++i) {
    const double t = u * std::exp(alpha * rule.nodes[i]);
    sqphi[i] = std::sqrt(t / (1.0 + t));
  }
  const KernelFn airy = [](double x, double y) { return airy_kernel(x, y); };
  Eigen::MatrixXd a = kernel_matrix(airy, rule);
  for (int j = 0; j < rule.order; ++j) {
    for (int i = 0; i < rule.order; ++i) a(i, j) *= sqphi[i] * sqphi[j];
  }
  return det_one_minus(a);
}

std::vector<Beta1LaplacePoint> laplace_rhs_beta1_mc(std::span<const double> u_grid, double alpha,
                                                    const Beta1LaplaceParams& params,
                                                    SeedSpec seed) {
  if (!(alpha > 0.0)) throw std::invalid_argument("laplace_rhs_beta1_mc: alpha must be > 0");
  for (double u : u_grid) {
    if (!(u >= 0.0)) throw std::invalid_argument("laplace_rhs_beta1_mc: u must be >= 0");
  }
  const int nu = static_cast<int>(u_grid.size());
  const int ns = params.n_samples;
  if (ns < 2) throw std::invalid_argument("laplace_rhs_beta1_mc: need at least 2 samples");

  double u_max = 0.0;
  for (double u : u_grid) u_max = std::max(u_max, u);
  // Points deep enough that every retained factor is within 1e-13 of 1.
  const double cutoff =
      std::min(-(std::log(std::max(4.0 * u_max, 1e-2)) + 30.0) / alpha, -30.0 / alpha);

  std::vector<double> sums(nu, 0.0), sums_sq(nu, 0.0);
  std::vector<std::vector<double>> values(nu, std::vector<double>(ns));
  double tail_bound_acc = 0.0;
  std::mutex tail_mutex;

  parallel_replicas(ns, params.workers, [&](std::int64_t i) {
    RandomStream rs(make_seed(seed.master_seed, StreamDomain::laplace_beta1,
                              (seed.stream_id << 20) + static_cast<std::uint64_t>(i)));
    const AiryPointSample pts = sample_airy_edge_above(1, cutoff, params.n_sim, rs);
    for (int j = 0; j < nu; ++j) {
      double log_prod = 0.0;
      for (int p = 0; p < pts.points.size(); ++p) {
        log_prod += std::log1p(4.0 * u_grid[j] * std::exp(alpha * pts.points[p]));
      }
      values[j][static_cast<size_t>(i)] = std::exp(-0.5 * log_prod);
    }
    const double tb = tail_truncation_bound(alpha, std::min(pts.cutoff_level, -1e-6));
    std::scoped_lock lock(tail_mutex);
    tail_bound_acc = std::max(tail_bound_acc, tb);
  });

  for (int j = 0; j < nu; ++j) {
    for (int i = 0; i < ns; ++i) {
      sums[j] += values[j][i];
      sums_sq[j] += values[j][i] * values[j][i];
    }
  }

  std::vector<Beta1LaplacePoint> out(nu);
  for (int j = 0; j < nu; ++j) {
    const double mean = sums[j] / ns;
    const double var = std::max(0.0, sums_sq[j] / ns - mean * mean);
    out[j].u = u_grid[j];
    out[j].estimate = u_grid[j] == 0.0 ? 1.0 : mean;
    out[j].se = u_grid[j] == 0.0 ? 0.0 : std::sqrt(var / (ns - 1));
    out[j].lower_factor = std::exp(-2.0 * u_grid[j] * tail_bound_acc);
  }
  return out;
}

}  // namespace kpzlab
