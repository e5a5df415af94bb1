/**
 * This code is part of clockbound.
 *
 * (C) Copyright 2026, clockbound contributors.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root directory
 * of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
 *
 * Any modifications or derivative works of this code must retain this
 * copyright notice, and modified files need to carry a notice indicating
 * that they have been altered from the originals.
 */

#ifndef CLOCKBOUND_LINALG_HPP
#define CLOCKBOUND_LINALG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numeric>
#include <vector>

#include "clockbound/errors.hpp"

namespace clockbound {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Entropies and divergences are reported in bits throughout.
inline double log2_safe(double x) { return std::log2(x); }

inline constexpr double kHermTol = 1e-10;
// Relative eigenvalue cutoff below which a direction counts as off-support.
inline constexpr double kSupportCut = 1e-12;

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void hermitize(Matrix& m) { m = Cplx(0.5) * (m + Matrix(m.adjoint())); }

inline bool is_hermitian(const Matrix& m, double tol = kHermTol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return max_abs(m - m.adjoint()) <= tol * scale;
}

inline void require_hermitian(const Matrix& m, const char* who) {
  if (!is_hermitian(m))
    throw NotHermitian(std::string(who) + ": matrix is not Hermitian within tolerance");
}

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimMismatch(std::string(who) + ": operand dimensions differ");
}

// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
struct EigenSystem {
  RealVector values;
  Matrix vectors;  // columns are orthonormal eigenvectors
};

inline EigenSystem herm_eig(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw Error("herm_eig: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// f applied on the support of a PSD matrix given its eigen-system; directions
// with eigenvalue <= cut * max_eigenvalue are dropped (0 * f(0) := 0).
template <class Fn>
Matrix apply_on_support(const EigenSystem& es, Fn f, double cut = kSupportCut) {
  const Index d = es.values.size();
  const double lmax = es.values.cwiseAbs().maxCoeff();
  const double floor_val = cut * std::max(1e-300, lmax);
  Vector fvals = Vector::Zero(d);
  for (Index i = 0; i < d; ++i)
    if (es.values(i) > floor_val) fvals(i) = f(es.values(i));
  return es.vectors * fvals.asDiagonal() * es.vectors.adjoint();
}

inline Matrix matrix_power_psd(const Matrix& m, double p) {
  return apply_on_support(herm_eig(m), [p](double x) { return std::pow(x, p); });
}

inline Matrix matrix_sqrt_psd(const Matrix& m) { return matrix_power_psd(m, 0.5); }

inline Matrix matrix_log2_support(const Matrix& m) {
  return apply_on_support(herm_eig(m), [](double x) { return std::log2(x); });
}

// Projector onto the support (strictly positive part) of a PSD matrix.
inline Matrix support_projector(const Matrix& m, double cut = kSupportCut) {
  return apply_on_support(herm_eig(m), [](double) { return 1.0; }, cut);
}

// Weight of `a` outside the support of `b`; zero iff supp(a) <= supp(b).
inline double weight_outside_support(const Matrix& a, const Matrix& b,
                                     double cut = kSupportCut) {
  const Matrix p = Matrix::Identity(b.rows(), b.cols()) - support_projector(b, cut);
  return std::abs((p * a * p).trace().real());
}

inline double trace_norm(const Matrix& m) {
  if (is_hermitian(m)) {
    const EigenSystem es = herm_eig(m);
    return es.values.cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

inline Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Index product_of(const std::vector<Index>& dims) {
  return std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());
}

namespace detail {

// Mixed-radix row index for subsystem digit vector.
inline Index ravel(const std::vector<Index>& digits, const std::vector<Index>& dims) {
  Index idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + digits[k];
  return idx;
}

inline void unravel(Index idx, const std::vector<Index>& dims, std::vector<Index>& digits) {
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = idx % dims[k];
    idx /= dims[k];
  }
}

}  // namespace detail

// Partial trace over all subsystems not listed in `keep` (indices into dims,
// ascending order of the retained factors is preserved).
inline Matrix partial_trace(const Matrix& m, const std::vector<Index>& dims,
                            const std::vector<Index>& keep) {
  const Index total = product_of(dims);
  if (m.rows() != total || m.cols() != total)
    throw BadSubsystemSpec("partial_trace: subsystem dims do not factor the matrix");
  for (std::size_t k = 1; k < keep.size(); ++k)
    if (keep[k] <= keep[k - 1]) throw BadSubsystemSpec("partial_trace: keep set not ascending");
  for (Index k : keep)
    if (k < 0 || k >= static_cast<Index>(dims.size()))
      throw BadSubsystemSpec("partial_trace: keep index out of range");

  std::vector<Index> trace_dims, keep_dims;
  std::vector<std::size_t> is_kept(dims.size(), 0);
  for (Index k : keep) is_kept[static_cast<std::size_t>(k)] = 1;
  for (std::size_t k = 0; k < dims.size(); ++k)
    (is_kept[k] ? keep_dims : trace_dims).push_back(dims[k]);

  const Index dk = product_of(keep_dims);
  const Index dt = product_of(trace_dims);
  Matrix out = Matrix::Zero(dk, dk);

  std::vector<Index> kd(keep_dims.size()), ld(keep_dims.size()), td(trace_dims.size());
  std::vector<Index> full(dims.size());
  for (Index r = 0; r < dk; ++r) {
    detail::unravel(r, keep_dims, kd);
    for (Index c = 0; c < dk; ++c) {
      detail::unravel(c, keep_dims, ld);
      Cplx acc = 0.0;
      for (Index t = 0; t < dt; ++t) {
        detail::unravel(t, trace_dims, td);
        std::size_t ik = 0, it = 0;
        for (std::size_t s = 0; s < dims.size(); ++s)
          full[s] = is_kept[s] ? kd[ik++] : td[it++];
        const Index row = detail::ravel(full, dims);
        ik = 0;
        it = 0;
        for (std::size_t s = 0; s < dims.size(); ++s)
          full[s] = is_kept[s] ? ld[ik++] : td[it++];
        acc += m(row, detail::ravel(full, dims));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

// Permute tensor factors: perm[k] is the source slot of the k-th output factor.
inline Matrix reorder_subsystems(const Matrix& m, const std::vector<Index>& dims,
                                 const std::vector<Index>& perm) {
  const Index total = product_of(dims);
  if (m.rows() != total || m.cols() != total)
    throw BadSubsystemSpec("reorder_subsystems: dims do not factor the matrix");
  if (perm.size() != dims.size())
    throw BadSubsystemSpec("reorder_subsystems: permutation size mismatch");

  std::vector<Index> new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k)
    new_dims[k] = dims[static_cast<std::size_t>(perm[k])];

  std::vector<Index> row_map(static_cast<std::size_t>(total));
  std::vector<Index> nd(dims.size()), od(dims.size());
  for (Index r = 0; r < total; ++r) {
    detail::unravel(r, new_dims, nd);
    for (std::size_t k = 0; k < perm.size(); ++k) od[static_cast<std::size_t>(perm[k])] = nd[k];
    row_map[static_cast<std::size_t>(r)] = detail::ravel(od, dims);
  }

  Matrix out(total, total);
  for (Index r = 0; r < total; ++r)
    for (Index c = 0; c < total; ++c)
      out(r, c) = m(row_map[static_cast<std::size_t>(r)], row_map[static_cast<std::size_t>(c)]);
  return out;
}

}  // namespace clockbound

#endif  // CLOCKBOUND_LINALG_HPP
