// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <variant>
#include <vector>

#include "kpzlab/rng.hpp"

namespace kpzlab {

/// Wigner matrix in the GOE/GUE normalization: diagonal variance 2 (beta=1)
/// or 1 (beta=2), off-diagonal variance / E|.|^2 equal to 1, matching
/// M = (X + X*)/2 for iid Gaussian X.
struct DenseHermitian {
  int beta = 1;  // 1: real symmetric, 2: complex Hermitian
  std::variant<Eigen::MatrixXd, Eigen::MatrixXcd> entries;

  int n() const {
    return beta == 1 ? static_cast<int>(std::get<Eigen::MatrixXd>(entries).rows())
                     : static_cast<int>(std::get<Eigen::MatrixXcd>(entries).rows());
  }
  const Eigen::MatrixXd& real() const { return std::get<Eigen::MatrixXd>(entries); }
  const Eigen::MatrixXcd& cplx() const { return std::get<Eigen::MatrixXcd>(entries); }
};

struct TridiagonalSym {
  Eigen::VectorXd diag;
  Eigen::VectorXd offdiag;  // size n-1; entry m couples rows m and m+1

  int n() const { return static_cast<int>(diag.size()); }
};

/// Eigenvalues (descending) plus squared first eigenvector components.
/// source_n records the dimension the measure belongs to, which may exceed
/// eigenvalues.size() when the measure came from an edge corner block.
struct SpectralMeasureAtE1 {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd weights;
  int source_n = 0;
};

struct FullSpectrum {
  int beta = 1;
  Eigen::VectorXd eigenvalues;       // descending
  Eigen::MatrixXcd coordinate_rows;  // row r holds z_{a_r}^j over eigenvalue index j
  std::vector<int> row_indices;      // requested coordinate indices (0-based)
};

DenseHermitian sample_goe_gue(int n, int beta, RandomStream& rs);
DenseHermitian sample_wigner_matched(int n, int beta, RandomStream& rs);

/// Householder reduction to a real symmetric tridiagonal matrix through a
/// unitary similarity that fixes e1; off-diagonals are phase-normalized to
/// be nonnegative. A vanishing pivot column produces a zero off-diagonal
/// and the reduction continues on the decoupled block.
TridiagonalSym householder_tridiagonalize(const DenseHermitian& m);

/// Dumitriu-Edelman tridiagonal beta-ensemble: N(0, 2/beta) diagonal and
/// offdiag[m] = chi(beta*(n-1-m))/sqrt(beta), so the chi parameter
/// beta*(n-1) sits adjacent to the (1,1) corner.
TridiagonalSym sample_dumitriu_edelman(int n, double beta, RandomStream& rs);

/// All eigenvalues and first-component weights by implicit-shift QL with a
/// single accumulated row (Golub-Welsch). O(n^2) time, O(n) memory.
SpectralMeasureAtE1 spectral_at_e1(const TridiagonalSym& t);

/// Corner block size covering edge depth `depth` (in N^{1/6}(lambda-2 sqrt N)
/// units) plus a localization margin.
int edge_corner_size(int n, double depth);

/// Spectral measure of the leading corner block. Eigenvalues within `depth`
/// of either spectral edge, and their e1 weights, agree with the full
/// decomposition to near machine precision because edge eigenvectors of the
/// beta-ensemble localize in the first O(n^{1/3}) coordinates.
SpectralMeasureAtE1 corner_spectral_at_e1(const TridiagonalSym& t, double depth);

/// Full spectral decomposition returning the requested coordinate rows.
/// Dense path only: n > dense_cap raises a size error pointing to the
/// tridiagonal path.
FullSpectrum full_eigen(const DenseHermitian& m, std::span<const int> coordinate_indices,
                        int dense_cap = 2000);

struct FunctionalValue {
  double value = 0.0;
  bool overflow = false;
};
struct ComplexFunctionalValue {
  std::complex<double> value;
  bool overflow = false;
};

/// sign * exp(k ln|x|); sets the overflow flag instead of silently clipping.
FunctionalValue pow_signed(double x, long long k);

/// (n/beta) sum_j p_j x_j^{2m} (1 + x_j) with x_j = lambda_j/(2 sqrt n) and
/// m = floor(alpha n^{2/3}), n = spec.source_n.
FunctionalValue moment_functional_11(const SpectralMeasureAtE1& spec, double alpha, double beta);

/// (n/2) sum_j z_a^j conj(z_b^j) x_j^{2m} (1 + x_j).
ComplexFunctionalValue matrix_element_functional(const FullSpectrum& spec, int a, int b,
                                                 double alpha);

/// (1/2) sum_j x_j^{2m} (1 + x_j) over all eigenvalues of an n x n matrix.
FunctionalValue trace_functional(const Eigen::VectorXd& eigenvalues, int n, double alpha);

/// Dumitriu-Edelman draw -> spectral measure -> (1,1) moment functional.
/// Uses the corner block unless `full` is set or n is small.
FunctionalValue sample_moment_functional_tridiagonal(int n, double beta, double alpha,
                                                     RandomStream& rs, bool full = false);

/// Brute-force sum over index paths for [M^k]_{11}; tiny instances only
/// (n^{k-1} <= 1e7). Test oracle for the moment identities.
std::complex<double> path_sum_oracle(const DenseHermitian& m, int k);

/// Implicit-shift QL on a symmetric tridiagonal matrix (d, e); every
/// rotation is applied to the columns of `rows` when non-null. Eigenvalues
/// are left in d unsorted. Throws on non-convergence with the failing block
/// index in the message.
void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd* rows);
void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXcd* rows);

}  // namespace kpzlab
