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

#ifndef CLOCKBOUND_CONDITIONAL_HPP
#define CLOCKBOUND_CONDITIONAL_HPP

#include <functional>

#include "clockbound/solver.hpp"

namespace clockbound {

/// Conditional Renyi entropy S_a(rest | cond) = -inf_sigma D_a(rho || I (x) sigma),
/// optimizing over density operators on the conditioning factors. `cond` lists
/// the conditioning subsystem indices (ascending). Any feasible sigma certifies
/// a lower bound on the entropy, so the reported value never overstates it.
inline EntropyResult conditional_renyi(const DensityOperator& rho,
                                       const std::vector<Index>& cond,
                                       const RenyiOrder& order,
                                       const SolverOptions& opts = {}) {
  const std::vector<Index>& dims = rho.subsystem_dims();
  std::vector<char> is_cond(dims.size(), 0);
  for (Index c : cond) {
    if (c < 0 || c >= static_cast<Index>(dims.size()))
      throw BadSubsystemSpec("conditional_renyi: conditioning index out of range");
    is_cond[static_cast<std::size_t>(c)] = 1;
  }

  std::vector<Index> perm;
  Index rest_dim = 1, cond_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!is_cond[k]) {
      perm.push_back(static_cast<Index>(k));
      rest_dim *= dims[k];
    }
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (is_cond[k]) {
      perm.push_back(static_cast<Index>(k));
      cond_dim *= dims[k];
    }

  const Matrix ordered = reorder_subsystems(rho.matrix(), dims, perm);
  const ConditionalAlgebra alg(rest_dim, cond_dim);
  EntropyResult res = renyi_divergence_min(ordered, alg, order, opts);
  res.value = -res.value;
  return res;
}

struct QuadratureSpec {
  double tol = 1e-6;
  Index initial_nodes = 129;  // composite trapezoid, node count doubled per level
  Index max_nodes = 32769;
};

/// Differential conditional entropy of the uniformly weighted family
/// { rho(t) / t_final } on [0, t_final]:
///   s = -int_0^{T} dt D(rho(t)/T || rho_avg)
///     = log2 T - (1/T) int_0^{T} dt D(rho(t) || rho_avg),
/// using D(p rho || sigma) = p D(rho || sigma) + p log2 p. The integral runs
/// composite trapezoid with Richardson refinement until two successive
/// refined estimates agree to quad.tol.
inline double differential_conditional_entropy(const std::function<Matrix(double)>& state_at,
                                               double t_final, const Matrix& rho_avg,
                                               const QuadratureSpec& quad = {}) {
  if (!(t_final > 0.0)) throw Error("differential_conditional_entropy: horizon must be positive");

  const EigenSystem avg_eig = herm_eig(rho_avg);
  auto integrand = [&](double t) {
    const double d = quantum_relative_entropy(state_at(t), avg_eig);
    if (!std::isfinite(d))
      throw QuadratureNotConverged(
          "differential_conditional_entropy: divergence not finite along the path");
    return d;
  };

  Index n = quad.initial_nodes;  // node count, spacing h = T/(n-1)
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    vals[static_cast<std::size_t>(i)] = integrand(t_final * static_cast<double>(i) /
                                                  static_cast<double>(n - 1));

  auto trapezoid = [&](const std::vector<double>& v) {
    const double h = t_final / static_cast<double>(v.size() - 1);
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * h;
  };

  double coarse = trapezoid(vals);
  double prev_estimate = kInf;
  while (true) {
    const Index n_new = 2 * (n - 1) + 1;
    if (n_new > quad.max_nodes)
      throw QuadratureNotConverged("differential_conditional_entropy: node cap reached");
    std::vector<double> refined(static_cast<std::size_t>(n_new));
    for (Index i = 0; i < n_new; ++i) {
      if (i % 2 == 0)
        refined[static_cast<std::size_t>(i)] = vals[static_cast<std::size_t>(i / 2)];
      else
        refined[static_cast<std::size_t>(i)] =
            integrand(t_final * static_cast<double>(i) / static_cast<double>(n_new - 1));
    }
    const double fine = trapezoid(refined);
    const double richardson = fine + (fine - coarse) / 3.0;
    const double estimate = std::log2(t_final) - richardson / t_final;
    if (std::abs(estimate - prev_estimate) < quad.tol) return estimate;
    prev_estimate = estimate;
    coarse = fine;
    vals = std::move(refined);
    n = n_new;
  }
}

}  // namespace clockbound

#endif  // CLOCKBOUND_CONDITIONAL_HPP
