// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include "kpzlab/rng.hpp"

namespace kpzlab {

/// Finite truncation of an Airy_beta point configuration: the top points of
/// an edge-rescaled Dumitriu-Edelman spectrum, N^{1/6}(lambda - 2 sqrt(N)).
struct AiryPointSample {
  int beta = 2;
  Eigen::VectorXd points;  // strictly descending
  int n_sim = 0;
  double cutoff_level = 0.0;  // lowest retained point
};

/// Top-k edge-rescaled eigenvalues of a fresh size-n_sim sample.
AiryPointSample sample_airy_edge(int beta, int k, int n_sim, RandomStream& rs);

/// Every edge-rescaled eigenvalue above `cutoff` (cutoff < 0).
AiryPointSample sample_airy_edge_above(int beta, double cutoff, int n_sim, RandomStream& rs);

/// Airy points with per-point iid standard Gaussian decoration vectors of
/// length a_max; v is only populated for beta = 2.
struct DecoratedSample {
  AiryPointSample points;
  Eigen::MatrixXd u;  // k x a_max
  Eigen::MatrixXd v;  // k x a_max for beta = 2, otherwise empty
};

DecoratedSample decorate(const AiryPointSample& sample, int a_max, RandomStream& rs);

/// sum_n W_n e^{alpha lambda_n} with rank-one W_n = u u^T (beta=1) or
/// (1/2)(u+iv)(u+iv)^* (beta=2); Hermitian PSD by construction.
struct DecoratedIntegral {
  Eigen::MatrixXcd matrix;
  double truncation_bound = 0.0;
};
DecoratedIntegral decorated_integral_exp(const DecoratedSample& dec, double alpha);

/// Upper estimate of the expected mass discarded below cutoff L < 0:
/// integral of e^{alpha l} sqrt(|l|)/pi over (-inf, L], by quadrature.
double tail_truncation_bound(double alpha, double cutoff_level);

/// Deep-tail density-model integral over (-inf, L] for any L (quadrature
/// helper shared with the truncation bound; L may be 0 here).
double tail_density_integral(double alpha, double level);

struct KpzParams {
  int n_sim = 4000;
  int k = 0;  // 0: keep every point above -(12/alpha) log(10)
};

/// One draw of the KPZ one-point variable Z^beta(2 alpha^3, 0) e^{alpha^3/12}:
/// 2 sum (u_1^n)^2 e^{alpha lambda_n} for beta = 1,
/// sum ((u_1^n)^2 + (v_1^n)^2)/2 e^{alpha lambda_n} for beta = 2.
struct KpzSample {
  double value = 0.0;
  double tail_bound = 0.0;
};
KpzSample kpz_sample(int beta, double alpha, const KpzParams& params, RandomStream& rs);

/// The same variable evaluated on an existing decorated sample; equals
/// (2/beta) times the (1,1) entry of decorated_integral_exp.
double kpz_value(const DecoratedSample& dec, double alpha);

}  // namespace kpzlab
