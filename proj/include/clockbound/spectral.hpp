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

#ifndef CLOCKBOUND_SPECTRAL_HPP
#define CLOCKBOUND_SPECTRAL_HPP

#include <vector>

#include "clockbound/density.hpp"
#include "clockbound/linalg.hpp"

namespace clockbound {

/// Hermitian operator stored as distinct eigenvalues with the projectors onto
/// their eigenspaces. Eigenvalues closer than the grouping tolerance are
/// merged into one degenerate level.
class SpectralHamiltonian {
 public:
  SpectralHamiltonian(Index dim, std::vector<double> energies,
                      std::vector<Matrix> projectors, double grouping_tol)
      : dim_(dim),
        energies_(std::move(energies)),
        projectors_(std::move(projectors)),
        grouping_tol_(grouping_tol) {
    if (energies_.empty() || energies_.size() != projectors_.size())
      throw Error("SpectralHamiltonian: inconsistent level data");
    Matrix sum = Matrix::Zero(dim_, dim_);
    for (std::size_t k = 0; k < projectors_.size(); ++k) {
      const Matrix& p = projectors_[k];
      if (p.rows() != dim_ || p.cols() != dim_)
        throw DimMismatch("SpectralHamiltonian: projector dimension mismatch");
      if (max_abs(p * p - p) > 1e-9)
        throw Error("SpectralHamiltonian: projector not idempotent");
      sum += p;
      for (std::size_t l = 0; l < k; ++l)
        if (max_abs(projectors_[k] * projectors_[l]) > 1e-9)
          throw Error("SpectralHamiltonian: projectors not mutually orthogonal");
    }
    if (max_abs(sum - Matrix::Identity(dim_, dim_)) > 1e-9)
      throw Error("SpectralHamiltonian: projectors do not resolve the identity");
  }

  Index dim() const { return dim_; }
  const std::vector<double>& energies() const { return energies_; }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  double grouping_tol() const { return grouping_tol_; }
  std::size_t level_count() const { return energies_.size(); }

  Matrix to_matrix() const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (std::size_t k = 0; k < energies_.size(); ++k) out += energies_[k] * projectors_[k];
    return out;
  }

  /// Orthonormal basis columns for the eigenspace of level k.
  Matrix level_basis(std::size_t k) const {
    EigenSystem es = herm_eig(projectors_[k]);
    const Index rank = static_cast<Index>(std::lround(projectors_[k].trace().real()));
    // herm_eig sorts ascending, so the eigenvalue-1 directions come last.
    return es.vectors.rightCols(rank);
  }

  double min_gap() const {
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < energies_.size(); ++i)
      g = std::min(g, energies_[i] - energies_[i - 1]);
    return g;
  }

  double max_gap() const {
    if (energies_.size() < 2) return 0.0;
    return energies_.back() - energies_.front();
  }

 private:
  Index dim_;
  std::vector<double> energies_;
  std::vector<Matrix> projectors_;
  double grouping_tol_;
};

inline double default_grouping_tol(const RealVector& eigenvalues) {
  return 1e-9 * std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
}

/// Eigen-decompose a Hermitian matrix and merge near-degenerate eigenvalues
/// into common projectors. Tolerance <= 0 selects the default
/// 1e-9 * max(1, max |eigenvalue|).
inline SpectralHamiltonian spectral_decompose(const Matrix& m, double grouping_tol = 0.0) {
  require_hermitian(m, "spectral_decompose");
  EigenSystem es = herm_eig(m);
  if (grouping_tol <= 0.0) grouping_tol = default_grouping_tol(es.values);
  const double scale = std::max(1.0, es.values.cwiseAbs().maxCoeff());
  const double merge_gap = grouping_tol * scale;

  std::vector<double> energies;
  std::vector<Matrix> projectors;
  const Index d = es.values.size();
  Index start = 0;
  while (start < d) {
    Index stop = start + 1;
    while (stop < d && es.values(stop) - es.values(stop - 1) <= merge_gap) ++stop;
    double mean = 0.0;
    Matrix proj = Matrix::Zero(d, d);
    for (Index i = start; i < stop; ++i) {
      mean += es.values(i);
      proj += es.vectors.col(i) * es.vectors.col(i).adjoint();
    }
    energies.push_back(mean / static_cast<double>(stop - start));
    projectors.push_back(std::move(proj));
    start = stop;
  }
  return SpectralHamiltonian(d, std::move(energies), std::move(projectors), grouping_tol);
}

/// Embed H acting on one factor of a product space: I_left (x) H (x) I_right.
inline SpectralHamiltonian extend(const SpectralHamiltonian& h, Index left_dim,
                                  Index right_dim) {
  const Matrix il = Matrix::Identity(left_dim, left_dim);
  const Matrix ir = Matrix::Identity(right_dim, right_dim);
  std::vector<Matrix> projectors;
  projectors.reserve(h.level_count());
  for (const Matrix& p : h.projectors()) projectors.push_back(tensor(tensor(il, p), ir));
  return SpectralHamiltonian(left_dim * h.dim() * right_dim, h.energies(),
                             std::move(projectors), h.grouping_tol());
}

inline Matrix evolve(const Matrix& rho, const SpectralHamiltonian& h, double t) {
  if (rho.rows() != h.dim() || rho.cols() != h.dim())
    throw DimMismatch("evolve: state and Hamiltonian dimensions differ");
  Matrix u = Matrix::Zero(h.dim(), h.dim());
  for (std::size_t k = 0; k < h.level_count(); ++k)
    u += std::exp(Cplx(0.0, -h.energies()[k] * t)) * h.projectors()[k];
  return u * rho * u.adjoint();
}

inline DensityOperator evolve(const DensityOperator& rho, const SpectralHamiltonian& h,
                              double t) {
  return DensityOperator(evolve(rho.matrix(), h, t), rho.subsystem_dims());
}

/// Pinching channel: erase coherences between distinct eigenspaces of H.
inline Matrix pinch(const Matrix& rho, const SpectralHamiltonian& h) {
  if (rho.rows() != h.dim() || rho.cols() != h.dim())
    throw DimMismatch("pinch: state and Hamiltonian dimensions differ");
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  for (const Matrix& p : h.projectors()) out += p * rho * p;
  return out;
}

inline DensityOperator pinch(const DensityOperator& rho, const SpectralHamiltonian& h) {
  return DensityOperator(pinch(rho.matrix(), h), rho.subsystem_dims());
}

}  // namespace clockbound

#endif  // CLOCKBOUND_SPECTRAL_HPP
