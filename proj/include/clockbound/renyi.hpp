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

#ifndef CLOCKBOUND_RENYI_HPP
#define CLOCKBOUND_RENYI_HPP

#include <limits>
#include <vector>

#include "clockbound/density.hpp"
#include "clockbound/linalg.hpp"

namespace clockbound {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Entropic order alpha in (0, inf]. The conjugate order beta solves
/// 1/alpha + 1/beta = 2; the map alpha <-> beta is an involution on
/// [1/2, inf].
class RenyiOrder {
 public:
  explicit RenyiOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0)) throw Error("RenyiOrder: alpha must be positive");
  }

  static RenyiOrder infinity() { return RenyiOrder(kInf); }

  double value() const { return alpha_; }
  bool is_inf() const { return std::isinf(alpha_); }
  bool is_one() const { return alpha_ == 1.0; }

  RenyiOrder conjugate() const {
    if (alpha_ < 0.5)
      throw Error("RenyiOrder: conjugate order undefined below 1/2");
    if (is_inf()) return RenyiOrder(0.5);
    if (alpha_ == 0.5) return infinity();
    return RenyiOrder(alpha_ / (2.0 * alpha_ - 1.0));
  }

 private:
  double alpha_;
};

/// log2 sum_i x_i^p over x_i > cut * max(x), evaluated in the log domain so
/// large orders neither overflow nor underflow.
inline double log2_sum_pow(const RealVector& x, double p, double cut = kSupportCut) {
  double xmax = 0.0;
  for (Index i = 0; i < x.size(); ++i) xmax = std::max(xmax, x(i));
  if (xmax <= 0.0) return -kInf;
  const double lead = p * std::log2(xmax);
  double sum = 0.0;
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) > cut * xmax) sum += std::exp2(p * (std::log2(x(i)) - std::log2(xmax)));
  return lead + std::log2(sum);
}

inline double shannon_entropy(const RealVector& p) {
  double s = 0.0;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) > 0.0) s -= p(i) * std::log2(p(i));
  return s;
}

inline void require_distribution(const RealVector& p) {
  double sum = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) < -1e-12) throw NotADistribution("renyi_entropy: negative probability");
    sum += p(i);
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw NotADistribution("renyi_entropy: probabilities do not sum to 1");
}

/// Classical Renyi entropy in bits. alpha -> 1 gives Shannon entropy,
/// alpha = inf gives -log2 max p. (alpha = 0 is handled by the order-0
/// overload below since RenyiOrder excludes 0.)
inline double renyi_entropy(const RealVector& p, const RenyiOrder& order) {
  require_distribution(p);
  if (order.is_one()) return shannon_entropy(p);
  if (order.is_inf()) return -std::log2(p.maxCoeff());
  const double a = order.value();
  return log2_sum_pow(p, a) / (1.0 - a);
}

inline double renyi_entropy(const std::vector<double>& p, const RenyiOrder& order) {
  return renyi_entropy(Eigen::Map<const RealVector>(p.data(), static_cast<Index>(p.size())),
                       order);
}

/// Order-0 (support) entropy: log2 of the number of outcomes with weight
/// above the support cutoff.
inline double support_entropy(const RealVector& p, double cut = kSupportCut) {
  require_distribution(p);
  Index n = 0;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) > cut) ++n;
  return std::log2(static_cast<double>(n));
}

inline double von_neumann_entropy(const Matrix& rho) {
  return shannon_entropy(herm_eig(rho).values);
}

inline double von_neumann_entropy(const DensityOperator& rho) {
  return shannon_entropy(rho.eigensystem().values);
}

/// Quantum relative entropy D(xi || zeta) = Tr[xi (log2 xi - log2 zeta)],
/// +inf when supp(xi) is not contained in supp(zeta). The overload taking the
/// eigen-system of zeta lets callers amortize its decomposition.
inline double quantum_relative_entropy(const Matrix& xi, const EigenSystem& ez) {
  const double zmax = ez.values.cwiseAbs().maxCoeff();
  const double cut_val = kSupportCut * std::max(1e-300, zmax);
  double second = 0.0, outside = 0.0;
  for (Index j = 0; j < ez.values.size(); ++j) {
    const double overlap = (ez.vectors.col(j).adjoint() * xi * ez.vectors.col(j))(0).real();
    if (ez.values(j) <= cut_val)
      outside += overlap;
    else
      second += overlap * std::log2(ez.values(j));
  }
  if (outside > 1e-10) return kInf;
  const EigenSystem ex = herm_eig(xi);
  double first = 0.0;
  for (Index i = 0; i < ex.values.size(); ++i)
    if (ex.values(i) > 0.0) first += ex.values(i) * std::log2(ex.values(i));
  return first - second;
}

inline double quantum_relative_entropy(const Matrix& xi, const Matrix& zeta) {
  require_same_dim(xi, zeta, "quantum_relative_entropy");
  return quantum_relative_entropy(xi, herm_eig(zeta));
}

/// Max-relative entropy D_inf(xi || zeta) = log2 min{ lambda : xi <= lambda zeta }.
inline double max_relative_entropy(const Matrix& xi, const Matrix& zeta) {
  require_same_dim(xi, zeta, "max_relative_entropy");
  if (weight_outside_support(xi, zeta) > 1e-10) return kInf;
  const Matrix zi = matrix_power_psd(zeta, -0.5);
  const Matrix core = zi * xi * zi;
  const EigenSystem es = herm_eig(Cplx(0.5) * (core + Matrix(core.adjoint())));
  return std::log2(es.values.maxCoeff());
}

/// Finite-order core evaluated from a precomputed eigen-system of zeta;
/// one extra eigen-decomposition (of the sandwiched operator) per call.
inline double sandwiched_finite_from_eig(const Matrix& xi, const EigenSystem& ez,
                                         double a) {
  const Index d = ez.values.size();
  const double zmax = ez.values.cwiseAbs().maxCoeff();
  const double cut_val = kSupportCut * std::max(1e-300, zmax);
  if (a > 1.0) {
    double outside = 0.0;
    for (Index j = 0; j < d; ++j)
      if (ez.values(j) <= cut_val)
        outside += (ez.vectors.col(j).adjoint() * xi * ez.vectors.col(j))(0).real();
    if (outside > 1e-10) return kInf;
  }
  const double gamma = (1.0 - a) / (2.0 * a);
  Vector pw = Vector::Zero(d);
  for (Index i = 0; i < d; ++i)
    if (ez.values(i) > cut_val) pw(i) = std::pow(ez.values(i), gamma);
  const Matrix zg = ez.vectors * pw.asDiagonal() * ez.vectors.adjoint();
  Matrix core = zg * xi * zg;
  hermitize(core);
  const double log_tr = log2_sum_pow(herm_eig(core).values.cwiseMax(0.0), a);
  if (std::isinf(log_tr)) return kInf;  // disjoint supports
  return log_tr / (a - 1.0);
}

/// Sandwiched Renyi relative entropy in bits,
///   D_a(xi || zeta) = 1/(a-1) log2 Tr[(zeta^((1-a)/2a) xi zeta^((1-a)/2a))^a],
/// with matrix powers restricted to supports. Returns +inf when a > 1 and
/// supp(xi) is not contained in supp(zeta), or when the supports are disjoint.
/// a -> 1 is the quantum relative entropy, a = inf the max-relative entropy.
inline double sandwiched_relative_entropy(const Matrix& xi, const Matrix& zeta,
                                          const RenyiOrder& order) {
  require_same_dim(xi, zeta, "sandwiched_relative_entropy");
  require_hermitian(zeta, "sandwiched_relative_entropy");
  if (order.is_one()) return quantum_relative_entropy(xi, zeta);
  if (order.is_inf()) return max_relative_entropy(xi, zeta);
  const EigenSystem ez = herm_eig(zeta);
  if (ez.values.minCoeff() < -1e-10 * std::max(1.0, ez.values.cwiseAbs().maxCoeff()))
    throw NotPSD("sandwiched_relative_entropy: second argument not PSD");
  return sandwiched_finite_from_eig(xi, ez, order.value());
}

inline double sandwiched_relative_entropy(const DensityOperator& xi, const Matrix& zeta,
                                          const RenyiOrder& order) {
  return sandwiched_relative_entropy(xi.matrix(), zeta, order);
}

inline double sandwiched_relative_entropy(const DensityOperator& xi,
                                          const DensityOperator& zeta,
                                          const RenyiOrder& order) {
  return sandwiched_relative_entropy(xi.matrix(), zeta.matrix(), order);
}

}  // namespace clockbound

#endif  // CLOCKBOUND_RENYI_HPP
