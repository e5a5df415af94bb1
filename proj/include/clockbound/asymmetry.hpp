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

#ifndef CLOCKBOUND_ASYMMETRY_HPP
#define CLOCKBOUND_ASYMMETRY_HPP

#include "clockbound/clock_states.hpp"
#include "clockbound/conditional.hpp"
#include "clockbound/solver.hpp"

namespace clockbound {

struct AsymmetryResult {
  enum class Method { ClosedForm, BlockOptimized };

  double value = 0.0;               // bits
  DensityOperator witness_sigma;    // commutes with H
  Method method = Method::ClosedForm;
  bool converged = true;
  double residual = 0.0;
};

namespace detail {

/// States commuting with H = block-diagonal states over H's eigenspaces.
inline BlockDiagAlgebra commutant_algebra(const SpectralHamiltonian& h) {
  std::vector<Matrix> isometries;
  isometries.reserve(h.level_count());
  for (std::size_t k = 0; k < h.level_count(); ++k) isometries.push_back(h.level_basis(k));
  return BlockDiagAlgebra(std::move(isometries));
}

}  // namespace detail

/// Relative entropy of asymmetry: min divergence from rho to any state
/// commuting with H, in closed form S(pinch(rho)) - S(rho) with the pinched
/// state as the optimizer.
inline AsymmetryResult relative_entropy_of_asymmetry(const DensityOperator& rho,
                                                     const SpectralHamiltonian& h) {
  DensityOperator pinched = pinch(rho, h);
  const double value = von_neumann_entropy(pinched) - von_neumann_entropy(rho);
  return {std::max(0.0, value), std::move(pinched), AsymmetryResult::Method::ClosedForm,
          true, 0.0};
}

/// Renyi relative entropy of asymmetry: inf over block-diagonal sigma of
/// D_alpha(rho || sigma), each energy block parameterized independently.
inline AsymmetryResult renyi_asymmetry(const DensityOperator& rho,
                                       const SpectralHamiltonian& h,
                                       const RenyiOrder& order,
                                       const SolverOptions& opts = {}) {
  if (rho.dim() != h.dim()) throw DimMismatch("renyi_asymmetry: dimensions differ");
  if (order.is_one()) return relative_entropy_of_asymmetry(rho, h);

  const BlockDiagAlgebra alg = detail::commutant_algebra(h);
  EntropyResult res = renyi_divergence_min(rho.matrix(), alg, order, opts);
  return {std::max(0.0, res.value), std::move(*res.witness),
          AsymmetryResult::Method::BlockOptimized, res.converged, res.residual};
}

/// Both sides of the pinched-divergence duality for a pure tripartite state
/// and a projective measurement on the first factor:
///   lhs = inf_sigma D_a(psi_AB || sum_j Pi_j sigma_AB Pi_j)
///   rhs = S_b(Z|C) of the outcome-vs-C state, with 1/a + 1/b = 2.
/// The two sides are computed by independent solver routes and returned
/// without any internal equality assertion.
struct DualityPair {
  double pinched_divergence = 0.0;      // lhs, bits
  double dual_conditional_entropy = 0.0;  // rhs, bits
  EntropyResult lhs_detail;
  EntropyResult rhs_detail;
};

inline DualityPair pinched_divergence_duality(const DensityOperator& psi_abc,
                                              const std::vector<Matrix>& povm,
                                              const RenyiOrder& order,
                                              const SolverOptions& opts = {}) {
  const std::vector<Index>& dims = psi_abc.subsystem_dims();
  if (dims.size() != 3)
    throw BadSubsystemSpec("pinched_divergence_duality: need three factors (A,B,C)");
  if (!psi_abc.is_pure()) throw NotPure("pinched_divergence_duality: state is not pure");

  const Index da = dims[0], db = dims[1], dc = dims[2];
  Matrix sum = Matrix::Zero(da, da);
  for (std::size_t j = 0; j < povm.size(); ++j) {
    const Matrix& p = povm[j];
    if (p.rows() != da || p.cols() != da)
      throw DimMismatch("pinched_divergence_duality: POVM dimension mismatch");
    if (max_abs(p * p - p) > 1e-9)
      throw NotProjective("pinched_divergence_duality: element not idempotent");
    for (std::size_t l = 0; l < j; ++l)
      if (max_abs(povm[j] * povm[l]) > 1e-9)
        throw NotProjective("pinched_divergence_duality: elements not orthogonal");
    sum += p;
  }
  if (max_abs(sum - Matrix::Identity(da, da)) > 1e-9)
    throw NotProjective("pinched_divergence_duality: POVM incomplete");

  // lhs: optimize over states block-diagonal in (range Pi_j) (x) B.
  const Matrix psi_ab = partial_trace(psi_abc.matrix(), dims, {0, 1});
  std::vector<Matrix> isometries;
  const Matrix ib = Matrix::Identity(db, db);
  for (const Matrix& p : povm) {
    EigenSystem es = herm_eig(p);
    const Index rank = static_cast<Index>(std::lround(p.trace().real()));
    if (rank == 0) continue;
    isometries.push_back(tensor(Matrix(es.vectors.rightCols(rank)), ib));
  }
  const BlockDiagAlgebra alg(std::move(isometries));
  EntropyResult lhs = renyi_divergence_min(psi_ab, alg, order, opts);

  // rhs: outcome-label state against C, conditional entropy at the conjugate order.
  std::vector<double> labels, weights;
  std::vector<Matrix> conditionals;
  const Matrix ibc = Matrix::Identity(db * dc, db * dc);
  for (std::size_t j = 0; j < povm.size(); ++j) {
    const Matrix pj = tensor(povm[j], ibc);
    Matrix block = partial_trace(pj * psi_abc.matrix(), dims, {2});
    hermitize(block);
    double w = block.trace().real();
    if (w < 0.0) w = 0.0;
    labels.push_back(static_cast<double>(j));
    weights.push_back(w);
    conditionals.push_back(w > 1e-300 ? Matrix(block / w)
                                      : Matrix(Matrix::Identity(dc, dc) / static_cast<double>(dc)));
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  const CqState omega_zc(std::move(labels), std::move(weights), std::move(conditionals));
  EntropyResult rhs = conditional_renyi(omega_zc.as_density(), {1}, order.conjugate(), opts);

  return {lhs.value, rhs.value, std::move(lhs), std::move(rhs)};
}

}  // namespace clockbound

#endif  // CLOCKBOUND_ASYMMETRY_HPP
