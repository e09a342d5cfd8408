// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "kpzlab/quadrature.hpp"
#include "kpzlab/rng.hpp"

namespace kpzlab {

using KernelFn = std::function<double(double, double)>;

/// Symmetrically weighted Nystrom matrix A_ij = sqrt(w_i) k(x_i, x_j) sqrt(w_j).
Eigen::MatrixXd kernel_matrix(const KernelFn& k, const QuadratureRule& rule);

/// det(I - A) through the eigenvalues of the symmetric discretization.
double fredholm_det(const KernelFn& k, const QuadratureRule& rule);

/// Tracy-Widom F2(s) = det(I - K_Airy restricted to (s, inf)), s in [-10, 6].
/// The operator is truncated at s + 16 where the kernel has decayed below
/// any target tolerance; `order` doubles as the self-convergence knob.
double tracy_widom_f2(double s, int order = 80);

struct TracyWidomMoments {
  double mean = 0.0;
  double variance = 0.0;
};
/// Mean and variance of F2 from CDF tail integrals evaluated with the
/// caller-controlled quadrature orders.
TracyWidomMoments tracy_widom_f2_moments(int outer_order = 64, int inner_order = 100);

/// E prod_k (1 + u e^{alpha lambda_k})^{-1} over Airy_2, as
/// det(I - sqrt(phi) K_Airy sqrt(phi)) with phi(l) = u e^{alpha l}/(1 + u e^{alpha l}).
/// The interval adapts to u and alpha with hard floor [-40, 16]; order 0
/// sizes the rule from the oscillation span.
double laplace_rhs_beta2(double u, double alpha, int order = 0);

struct Beta1LaplaceParams {
  int n_samples = 20000;
  int n_sim = 4000;
  int workers = 0;
};
struct Beta1LaplacePoint {
  double u = 0.0;
  double estimate = 0.0;      // Monte Carlo mean of prod (1 + 4u e^{alpha l})^{-1/2}
  double se = 0.0;            // standard error of the mean
  double lower_factor = 1.0;  // truncation correction interval [lf * est, est]
};

/// Monte Carlo estimate over Airy_1 samples, one shared sample set across
/// the whole u grid. The discarded tail multiplies the true product by a
/// factor between exp(-2u * tail_bound) and 1.
std::vector<Beta1LaplacePoint> laplace_rhs_beta1_mc(std::span<const double> u_grid, double alpha,
                                                    const Beta1LaplaceParams& params,
                                                    SeedSpec seed);

}  // namespace kpzlab
