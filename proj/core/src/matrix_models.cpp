// SPDX-License-Identifier: Apache-2.0
#include "kpzlab/matrix_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kpzlab {

namespace {

using Complex = std::complex<double>;

inline double conj_if_complex(double x) { return x; }
inline Complex conj_if_complex(const Complex& x) { return std::conj(x); }

// ---------------------------------------------------------------------------
// QL with implicit Wilkinson shifts, EISPACK imtql2 lineage. Rotations are
// applied to the columns of an optional row-accumulation matrix.
// ---------------------------------------------------------------------------
template <typename RowMatrix>
void ql_impl(Eigen::VectorXd& d, Eigen::VectorXd& e_in, RowMatrix* rows) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  if (e_in.size() != n - 1) {
    throw std::invalid_argument("tridiagonal_ql: offdiag must have size n-1");
  }

  Eigen::VectorXd e(n);
  e.head(n - 1) = e_in;
  e[n - 1] = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  long total_iter = 0;
  const long iter_cap_total = 30L * n + 60;
  const int nrows = rows != nullptr ? static_cast<int>(rows->rows()) : 0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      while (m < n - 1) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) break;
        ++m;
      }
      if (m == l) break;
      if (++iter > 50 || ++total_iter > iter_cap_total) {
        throw std::runtime_error("tridiagonal_ql: no convergence in block starting at index " +
                                 std::to_string(l));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);  // Wilkinson shift
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int a = 0; a < nrows; ++a) {
          const auto z = (*rows)(a, i + 1);
          (*rows)(a, i + 1) = s * (*rows)(a, i) + c * z;
          (*rows)(a, i) = c * (*rows)(a, i) - s * z;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

// Descending eigenvalue order, ties broken by descending weight.
template <typename WeightFn>
std::vector<int> sort_permutation(const Eigen::VectorXd& d, const WeightFn& weight) {
  std::vector<int> idx(d.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (d[a] != d[b]) return d[a] > d[b];
    return weight(a) > weight(b);
  });
  return idx;
}

// ---------------------------------------------------------------------------
// Householder reduction, templated over real/complex scalars. Reflectors and
// phase fixes act on coordinates >= 1 only, so e1 stays fixed and the
// spectral measure at e1 is preserved exactly.
// ---------------------------------------------------------------------------
template <typename Scalar>
struct HouseholderResult {
  TridiagonalSym tri;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rows;  // requested rows of the transform
};

template <typename Scalar>
HouseholderResult<Scalar> householder_impl(
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a, std::span<const int> row_indices) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const int n = static_cast<int>(a.rows());
  if (n < 1) throw std::invalid_argument("householder_tridiagonalize: empty matrix");

  HouseholderResult<Scalar> out;
  out.rows.resize(static_cast<int>(row_indices.size()), n);
  out.rows.setZero();
  for (int r = 0; r < static_cast<int>(row_indices.size()); ++r) {
    out.rows(r, row_indices[r]) = Scalar(1);
  }
  const bool track_rows = out.rows.rows() > 0;

  const double tiny = 1e-290;
  for (int k = 0; k + 2 < n; ++k) {
    const int len = n - k - 1;
    Vector x = a.col(k).segment(k + 1, len);
    const double nrm = x.norm();
    if (nrm < tiny) {
      // Breakdown: zero pivot column. Record a 0 off-diagonal and continue
      // on the decoupled trailing block.
      a.col(k).segment(k + 1, len).setZero();
      a.row(k).segment(k + 1, len).setZero();
      continue;
    }
    Scalar sgn = Scalar(1);
    const double x0_mag = std::abs(x[0]);
    if (x0_mag > 0.0) sgn = x[0] / Scalar(x0_mag);
    Vector v = x;
    v[0] += sgn * Scalar(nrm);
    const Scalar tau = Scalar(2.0 / v.squaredNorm());

    auto sub = a.bottomRightCorner(len, len);
    Vector p = (sub * v) * tau;
    const Scalar kappa = Scalar(0.5) * tau * (v.adjoint() * p)(0, 0);
    Vector w = p - kappa * v;
    sub.noalias() -= v * w.adjoint();
    sub.noalias() -= w * v.adjoint();
    a(k + 1, k) = -sgn * Scalar(nrm);
    a(k, k + 1) = conj_if_complex(a(k + 1, k));
    if (len > 1) {
      a.col(k).segment(k + 2, len - 1).setZero();
      a.row(k).segment(k + 2, len - 1).setZero();
    }
    if (track_rows) {
      Vector rv = out.rows.middleCols(k + 1, len) * v;
      out.rows.middleCols(k + 1, len).noalias() -= tau * rv * v.adjoint();
    }
  }

  // Phase-normalize every off-diagonal to a nonnegative real; a unit phase
  // on basis vector m+1 is a similarity that leaves the diagonal alone.
  out.tri.diag.resize(n);
  out.tri.offdiag.resize(std::max(0, n - 1));
  for (int i = 0; i < n; ++i) out.tri.diag[i] = std::real(Complex(a(i, i)));
  for (int m = 0; m + 1 < n; ++m) {
    const Scalar sdiag = a(m + 1, m);
    const double mag = std::abs(sdiag);
    if (mag > 0.0 && sdiag != Scalar(mag)) {
      const Scalar ph = Scalar(mag) / sdiag;
      a.row(m + 1) *= ph;
      a.col(m + 1) *= conj_if_complex(ph);
      if (track_rows) out.rows.col(m + 1) *= conj_if_complex(ph);
    }
    out.tri.offdiag[m] = std::real(Complex(a(m + 1, m)));
  }
  return out;
}

long long power_index(double alpha, int n) {
  const double c = std::cbrt(static_cast<double>(n));
  return static_cast<long long>(std::floor(alpha * c * c));
}

}  // namespace

void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXd* rows) {
  ql_impl(d, e, rows);
}
void tridiagonal_ql(Eigen::VectorXd& d, Eigen::VectorXd& e, Eigen::MatrixXcd* rows) {
  ql_impl(d, e, rows);
}

DenseHermitian sample_goe_gue(int n, int beta, RandomStream& rs) {
  if (n < 1) throw std::invalid_argument("sample_goe_gue: n must be >= 1");
  if (beta == 1) {
    Eigen::MatrixXd m(n, n);
    const double root2 = std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
      m(i, i) = root2 * rs.gaussian();
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = rs.gaussian();
        m(j, i) = m(i, j);
      }
    }
    return DenseHermitian{1, std::move(m)};
  }
  if (beta == 2) {
    Eigen::MatrixXcd m(n, n);
    const double inv_root2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
      m(i, i) = Complex(rs.gaussian(), 0.0);
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = Complex(rs.gaussian() * inv_root2, rs.gaussian() * inv_root2);
        m(j, i) = std::conj(m(i, j));
      }
    }
    return DenseHermitian{2, std::move(m)};
  }
  throw std::invalid_argument("sample_goe_gue: beta must be 1 or 2");
}

DenseHermitian sample_wigner_matched(int n, int beta, RandomStream& rs) {
  if (n < 1) throw std::invalid_argument("sample_wigner_matched: n must be >= 1");
  if (beta == 1) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = matched_diagonal(rs, 1);
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = matched_offdiagonal_real(rs);
        m(j, i) = m(i, j);
      }
    }
    return DenseHermitian{1, std::move(m)};
  }
  if (beta == 2) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = Complex(matched_diagonal(rs, 2), 0.0);
      for (int j = i + 1; j < n; ++j) {
        m(i, j) = matched_offdiagonal_complex(rs);
        m(j, i) = std::conj(m(i, j));
      }
    }
    return DenseHermitian{2, std::move(m)};
  }
  throw std::invalid_argument("sample_wigner_matched: beta must be 1 or 2");
}

TridiagonalSym householder_tridiagonalize(const DenseHermitian& m) {
  if (m.n() < 2) throw std::invalid_argument("householder_tridiagonalize: n must be >= 2");
  if (m.beta == 1) return householder_impl<double>(m.real(), {}).tri;
  return householder_impl<Complex>(m.cplx(), {}).tri;
}

TridiagonalSym sample_dumitriu_edelman(int n, double beta, RandomStream& rs) {
  if (n < 1) throw std::invalid_argument("sample_dumitriu_edelman: n must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("sample_dumitriu_edelman: beta must be > 0");
  TridiagonalSym t;
  t.diag.resize(n);
  t.offdiag.resize(std::max(0, n - 1));
  const double diag_sd = std::sqrt(2.0 / beta);
  const double inv_sqrt_beta = 1.0 / std::sqrt(beta);
  for (int i = 0; i < n; ++i) t.diag[i] = diag_sd * rs.gaussian();
  for (int m = 0; m + 1 < n; ++m) {
    t.offdiag[m] = inv_sqrt_beta * rs.chi(beta * (n - 1 - m));
  }
  return t;
}

SpectralMeasureAtE1 spectral_at_e1(const TridiagonalSym& t) {
  const int n = t.n();
  if (n < 1) throw std::invalid_argument("spectral_at_e1: empty matrix");
  Eigen::VectorXd d = t.diag;
  Eigen::VectorXd e = t.offdiag;
  Eigen::MatrixXd row(1, n);
  row.setZero();
  row(0, 0) = 1.0;
  tridiagonal_ql(d, e, &row);

  const auto idx = sort_permutation(d, [&](int j) { return row(0, j) * row(0, j); });
  SpectralMeasureAtE1 out;
  out.source_n = n;
  out.eigenvalues.resize(n);
  out.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[idx[j]];
    out.weights[j] = row(0, idx[j]) * row(0, idx[j]);
  }
  return out;
}

int edge_corner_size(int n, double depth) {
  if (n < 1) throw std::invalid_argument("edge_corner_size: n must be >= 1");
  if (!(depth > 0.0)) throw std::invalid_argument("edge_corner_size: depth must be > 0");
  const double b = (depth + 10.0) * std::cbrt(static_cast<double>(n));
  const long long cap = static_cast<long long>(std::ceil(b));
  return static_cast<int>(std::min<long long>(n, std::max<long long>(cap, 32)));
}

SpectralMeasureAtE1 corner_spectral_at_e1(const TridiagonalSym& t, double depth) {
  const int n = t.n();
  const int b = edge_corner_size(n, depth);
  if (b >= n) return spectral_at_e1(t);
  TridiagonalSym block;
  block.diag = t.diag.head(b);
  block.offdiag = t.offdiag.head(b - 1);
  SpectralMeasureAtE1 out = spectral_at_e1(block);
  out.source_n = n;
  return out;
}

FullSpectrum full_eigen(const DenseHermitian& m, std::span<const int> coordinate_indices,
                        int dense_cap) {
  const int n = m.n();
  if (n > dense_cap) {
    throw std::length_error(
        "full_eigen: n = " + std::to_string(n) + " exceeds the dense cap " +
        std::to_string(dense_cap) + "; use the tridiagonal path for (1,1) statistics");
  }
  for (int a : coordinate_indices) {
    if (a < 0 || a >= n) throw std::out_of_range("full_eigen: coordinate index out of range");
  }

  FullSpectrum out;
  out.beta = m.beta;
  out.row_indices.assign(coordinate_indices.begin(), coordinate_indices.end());

  auto finish = [&](Eigen::VectorXd& d, auto& rows) {
    const auto idx = sort_permutation(d, [&](int j) {
      return rows.rows() > 0 ? std::norm(Complex(rows(0, j))) : 0.0;
    });
    out.eigenvalues.resize(n);
    out.coordinate_rows.resize(rows.rows(), n);
    for (int j = 0; j < n; ++j) {
      out.eigenvalues[j] = d[idx[j]];
      for (int r = 0; r < rows.rows(); ++r) out.coordinate_rows(r, j) = rows(r, idx[j]);
    }
  };

  if (m.beta == 1) {
    auto h = householder_impl<double>(m.real(), coordinate_indices);
    Eigen::VectorXd d = h.tri.diag, e = h.tri.offdiag;
    tridiagonal_ql(d, e, h.rows.rows() > 0 ? &h.rows : nullptr);
    finish(d, h.rows);
  } else {
    auto h = householder_impl<Complex>(m.cplx(), coordinate_indices);
    Eigen::VectorXd d = h.tri.diag, e = h.tri.offdiag;
    tridiagonal_ql(d, e, h.rows.rows() > 0 ? &h.rows : nullptr);
    finish(d, h.rows);
  }
  return out;
}

FunctionalValue pow_signed(double x, long long k) {
  FunctionalValue out;
  if (k == 0) {
    out.value = 1.0;
    return out;
  }
  if (x == 0.0) {
    out.value = 0.0;
    return out;
  }
  const double ax = std::fabs(x);
  const double lx = std::log1p(ax - 1.0);  // accurate near |x| = 1
  const double t = static_cast<double>(k) * lx;
  const double sign = (x < 0.0 && (k & 1LL)) ? -1.0 : 1.0;
  if (t > 709.0) {
    out.value = sign * std::numeric_limits<double>::infinity();
    out.overflow = true;
    return out;
  }
  out.value = sign * std::exp(t);
  return out;
}

FunctionalValue moment_functional_11(const SpectralMeasureAtE1& spec, double alpha, double beta) {
  if (!(alpha > 0.0)) throw std::invalid_argument("moment_functional_11: alpha must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("moment_functional_11: beta must be > 0");
  const int n = spec.source_n;
  if (n < 1) throw std::invalid_argument("moment_functional_11: empty spectral measure");
  const long long m = power_index(alpha, n);
  const double inv_edge = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));

  FunctionalValue out;
  double acc = 0.0, carry = 0.0;
  for (int j = 0; j < spec.eigenvalues.size(); ++j) {
    const double x = spec.eigenvalues[j] * inv_edge;
    const FunctionalValue p = pow_signed(x, 2 * m);
    out.overflow = out.overflow || p.overflow;
    const double term = spec.weights[j] * p.value * (1.0 + x) - carry;
    const double next = acc + term;
    carry = (next - acc) - term;
    acc = next;
  }
  out.value = acc * static_cast<double>(n) / beta;
  return out;
}

ComplexFunctionalValue matrix_element_functional(const FullSpectrum& spec, int a, int b,
                                                 double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("matrix_element_functional: alpha must be > 0");
  int ra = -1, rb = -1;
  for (int r = 0; r < static_cast<int>(spec.row_indices.size()); ++r) {
    if (spec.row_indices[r] == a) ra = r;
    if (spec.row_indices[r] == b) rb = r;
  }
  if (ra < 0 || rb < 0) {
    throw std::out_of_range("matrix_element_functional: requested coordinate row not present");
  }
  const int n = static_cast<int>(spec.eigenvalues.size());
  const long long m = power_index(alpha, n);
  const double inv_edge = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));

  ComplexFunctionalValue out;
  Complex acc(0.0, 0.0);
  for (int j = 0; j < n; ++j) {
    const double x = spec.eigenvalues[j] * inv_edge;
    const FunctionalValue p = pow_signed(x, 2 * m);
    out.overflow = out.overflow || p.overflow;
    acc += spec.coordinate_rows(ra, j) * std::conj(spec.coordinate_rows(rb, j)) *
           (p.value * (1.0 + x));
  }
  out.value = acc * (static_cast<double>(n) / 2.0);
  return out;
}

FunctionalValue trace_functional(const Eigen::VectorXd& eigenvalues, int n, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("trace_functional: alpha must be > 0");
  if (n < 1) throw std::invalid_argument("trace_functional: n must be >= 1");
  const long long m = power_index(alpha, n);
  const double inv_edge = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
  FunctionalValue out;
  double acc = 0.0;
  for (int j = 0; j < eigenvalues.size(); ++j) {
    const double x = eigenvalues[j] * inv_edge;
    const FunctionalValue p = pow_signed(x, 2 * m);
    out.overflow = out.overflow || p.overflow;
    acc += p.value * (1.0 + x);
  }
  out.value = 0.5 * acc;
  return out;
}

FunctionalValue sample_moment_functional_tridiagonal(int n, double beta, double alpha,
                                                     RandomStream& rs, bool full) {
  const TridiagonalSym t = sample_dumitriu_edelman(n, beta, rs);
  // Depth keeping discarded edge terms below ~1e-9 relative, plus margin
  // for top-eigenvalue fluctuations.
  const double depth = std::log(1e10) / alpha + 8.0;
  SpectralMeasureAtE1 spec = (full || edge_corner_size(n, depth) >= n)
                                 ? spectral_at_e1(t)
                                 : corner_spectral_at_e1(t, depth);
  return moment_functional_11(spec, alpha, beta);
}

std::complex<double> path_sum_oracle(const DenseHermitian& m, int k) {
  const int n = m.n();
  if (k < 1) throw std::invalid_argument("path_sum_oracle: k must be >= 1");
  double paths = 1.0;
  for (int i = 0; i < k - 1; ++i) {
    paths *= n;
    if (paths > 1e7) throw std::length_error("path_sum_oracle: n^(k-1) exceeds 1e7");
  }
  auto entry = [&](int i, int j) -> Complex {
    return m.beta == 1 ? Complex(m.real()(i, j), 0.0) : m.cplx()(i, j);
  };
  if (k == 1) return entry(0, 0);

  std::vector<int> j(k - 1, 0);
  Complex total(0.0, 0.0);
  for (;;) {
    Complex prod = entry(0, j[0]);
    for (int s = 1; s < k - 1; ++s) prod *= entry(j[s - 1], j[s]);
    prod *= entry(j[k - 2], 0);
    total += prod;
    int pos = 0;
    while (pos < k - 1 && ++j[pos] == n) {
      j[pos] = 0;
      ++pos;
    }
    if (pos == k - 1) break;
  }
  return total;
}

}  // namespace kpzlab
