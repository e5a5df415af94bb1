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

#ifndef CLOCKBOUND_DENSITY_HPP
#define CLOCKBOUND_DENSITY_HPP

#include <utility>
#include <vector>

#include "clockbound/linalg.hpp"

namespace clockbound {

/// Positive semi-definite, unit-trace operator with an optional tensor-factor
/// structure. Eigenvalues in [-1e-10, 0) are treated as round-off: clamped to
/// zero and the state renormalized. Anything more negative is rejected.
class DensityOperator {
 public:
  static constexpr double kNegEigTol = 1e-10;
  static constexpr double kTraceTol = 1e-10;

  explicit DensityOperator(Matrix m, std::vector<Index> subsystem_dims = {}) {
    require_hermitian(m, "DensityOperator");
    if (subsystem_dims.empty()) subsystem_dims = {m.rows()};
    if (product_of(subsystem_dims) != m.rows())
      throw BadSubsystemSpec("DensityOperator: subsystem dims do not multiply to dim");

    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kTraceTol)
      throw NotAState("DensityOperator: trace differs from 1 beyond tolerance");

    EigenSystem es = herm_eig(m);
    const double min_eig = es.values.minCoeff();
    if (min_eig < -kNegEigTol)
      throw NotPSD("DensityOperator: negative eigenvalue beyond round-off tolerance");

    if (min_eig < 0.0) {
      for (Index i = 0; i < es.values.size(); ++i)
        if (es.values(i) < 0.0) es.values(i) = 0.0;
      const double s = es.values.sum();
      es.values /= s;
      m = es.vectors * es.values.asDiagonal() * es.vectors.adjoint();
      m = Cplx(0.5) * (m + Matrix(m.adjoint()));
    } else if (tr != 1.0) {
      m /= tr;
      es.values /= tr;
    }

    mat_ = std::move(m);
    eig_ = std::move(es);
    dims_ = std::move(subsystem_dims);
  }

  static DensityOperator from_pure(const Vector& psi, std::vector<Index> dims = {}) {
    const double n = psi.norm();
    if (n <= 0.0) throw NotAState("from_pure: zero vector");
    const Vector u = psi / n;
    return DensityOperator(u * u.adjoint(), std::move(dims));
  }

  static DensityOperator maximally_mixed(Index dim, std::vector<Index> dims = {}) {
    return DensityOperator(Matrix::Identity(dim, dim) / static_cast<double>(dim),
                           std::move(dims));
  }

  const Matrix& matrix() const { return mat_; }
  Index dim() const { return mat_.rows(); }
  const std::vector<Index>& subsystem_dims() const { return dims_; }

  /// Spectrum (ascending) and eigenbasis, computed once at construction.
  const EigenSystem& eigensystem() const { return eig_; }

  bool is_pure(double tol = 1e-9) const {
    return std::abs((mat_ * mat_).trace().real() - 1.0) <= tol;
  }

  DensityOperator with_dims(std::vector<Index> dims) const {
    DensityOperator out = *this;
    if (product_of(dims) != out.dim())
      throw BadSubsystemSpec("with_dims: dims do not multiply to dim");
    out.dims_ = std::move(dims);
    return out;
  }

 private:
  Matrix mat_;
  EigenSystem eig_;
  std::vector<Index> dims_;
};

inline DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  std::vector<Index> dims = a.subsystem_dims();
  dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
  return DensityOperator(tensor(a.matrix(), b.matrix()), std::move(dims));
}

inline DensityOperator partial_trace(const DensityOperator& rho,
                                     const std::vector<Index>& keep) {
  Matrix out = partial_trace(rho.matrix(), rho.subsystem_dims(), keep);
  std::vector<Index> dims;
  for (Index k : keep) dims.push_back(rho.subsystem_dims()[static_cast<std::size_t>(k)]);
  return DensityOperator(std::move(out), std::move(dims));
}

inline DensityOperator reorder_subsystems(const DensityOperator& rho,
                                          const std::vector<Index>& perm) {
  Matrix out = reorder_subsystems(rho.matrix(), rho.subsystem_dims(), perm);
  std::vector<Index> dims(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k)
    dims[k] = rho.subsystem_dims()[static_cast<std::size_t>(perm[k])];
  return DensityOperator(std::move(out), std::move(dims));
}

/// Canonical purification on dim^2 space: the first factor's marginal
/// reproduces the input, the second factor is the reference copy.
inline DensityOperator purify(const DensityOperator& rho) {
  const Index d = rho.dim();
  const EigenSystem& es = rho.eigensystem();
  Vector psi = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) {
    if (es.values(i) <= 0.0) continue;
    const double w = std::sqrt(es.values(i));
    for (Index r = 0; r < d; ++r) psi(r * d + i) += w * es.vectors(r, i);
  }
  return DensityOperator::from_pure(psi, {d, d});
}

/// Uhlmann fidelity (squared-overlap convention): F(|a><a|, |b><b|) = |<a|b>|^2.
inline double fidelity(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho.matrix(), sigma.matrix(), "fidelity");
  const Matrix sr = matrix_sqrt_psd(rho.matrix());
  const Matrix inner = sr * sigma.matrix() * sr;
  EigenSystem es = herm_eig(inner);
  double acc = 0.0;
  for (Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > 0.0) acc += std::sqrt(es.values(i));
  const double f = acc * acc;
  return std::min(1.0, std::max(0.0, f));
}

inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  require_same_dim(rho.matrix(), sigma.matrix(), "trace_distance");
  return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

}  // namespace clockbound

#endif  // CLOCKBOUND_DENSITY_HPP
