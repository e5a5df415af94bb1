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

#ifndef CLOCKBOUND_CLOCK_STATES_HPP
#define CLOCKBOUND_CLOCK_STATES_HPP

#include <optional>
#include <vector>

#include "clockbound/spectral.hpp"

namespace clockbound {

/// Ordered time values with weights (discrete) or a horizon (continuous).
/// Discrete times must be non-decreasing with at least two entries; duplicate
/// entries are legal but flagged so front ends can warn.
struct TimeEnsemble {
  enum class Kind { Discrete, Continuous };

  Kind kind = Kind::Discrete;
  std::vector<double> times;
  std::vector<double> weights;
  double t_final = 0.0;

  static TimeEnsemble discrete(std::vector<double> ts, std::vector<double> ws = {}) {
    if (ts.size() < 2) throw Error("TimeEnsemble: need at least two times");
    for (std::size_t k = 1; k < ts.size(); ++k)
      if (ts[k] < ts[k - 1]) throw Error("TimeEnsemble: times must be non-decreasing");
    if (ws.empty()) ws.assign(ts.size(), 1.0 / static_cast<double>(ts.size()));
    if (ws.size() != ts.size()) throw Error("TimeEnsemble: weight count mismatch");
    double sum = 0.0;
    for (double w : ws) {
      if (w < -1e-12) throw NotADistribution("TimeEnsemble: negative weight");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-10)
      throw NotADistribution("TimeEnsemble: weights do not sum to 1");
    TimeEnsemble out;
    out.kind = Kind::Discrete;
    out.times = std::move(ts);
    out.weights = std::move(ws);
    return out;
  }

  /// K equally spaced times over [0, horizon) starting at 0.
  static TimeEnsemble equally_spaced(std::size_t count, double horizon) {
    if (count < 2) throw Error("TimeEnsemble: need at least two times");
    std::vector<double> ts(count);
    for (std::size_t k = 0; k < count; ++k)
      ts[k] = horizon * static_cast<double>(k) / static_cast<double>(count);
    return discrete(std::move(ts));
  }

  static TimeEnsemble continuous(double horizon) {
    if (!(horizon > 0.0)) throw Error("TimeEnsemble: horizon must be positive");
    TimeEnsemble out;
    out.kind = Kind::Continuous;
    out.t_final = horizon;
    return out;
  }

  std::size_t count() const { return times.size(); }

  bool uniform_weights(double tol = 1e-12) const {
    const double u = 1.0 / static_cast<double>(weights.size());
    for (double w : weights)
      if (std::abs(w - u) > tol) return false;
    return true;
  }

  bool has_duplicate_times(double tol = 0.0) const {
    for (std::size_t k = 1; k < times.size(); ++k)
      if (times[k] - times[k - 1] <= tol) return true;
    return false;
  }
};

/// Labeled ensemble {weight, label, conditional state}, equivalently the
/// block-diagonal state sum_j w_j |j><j| (x) rho_j with the label register first.
class CqState {
 public:
  CqState(std::vector<double> labels, std::vector<double> weights,
          std::vector<Matrix> conditionals)
      : labels_(std::move(labels)),
        weights_(std::move(weights)),
        conditionals_(std::move(conditionals)) {
    if (labels_.empty() || labels_.size() != weights_.size() ||
        labels_.size() != conditionals_.size())
      throw Error("CqState: inconsistent ensemble data");
    cond_dim_ = conditionals_[0].rows();
    double sum = 0.0;
    for (std::size_t j = 0; j < weights_.size(); ++j) {
      if (conditionals_[j].rows() != cond_dim_ || conditionals_[j].cols() != cond_dim_)
        throw DimMismatch("CqState: conditional dimensions differ");
      if (weights_[j] < -1e-12) throw NotADistribution("CqState: negative weight");
      sum += weights_[j];
    }
    if (std::abs(sum - 1.0) > 1e-10)
      throw NotADistribution("CqState: weights do not sum to 1");
  }

  std::size_t size() const { return labels_.size(); }
  Index conditional_dim() const { return cond_dim_; }
  const std::vector<double>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Matrix>& conditionals() const { return conditionals_; }

  Matrix block_matrix() const {
    const Index k = static_cast<Index>(size());
    Matrix out = Matrix::Zero(k * cond_dim_, k * cond_dim_);
    for (Index j = 0; j < k; ++j)
      out.block(j * cond_dim_, j * cond_dim_, cond_dim_, cond_dim_) =
          weights_[static_cast<std::size_t>(j)] * conditionals_[static_cast<std::size_t>(j)];
    return out;
  }

  /// Block-diagonal view with subsystem dims (labels, conditional).
  DensityOperator as_density() const {
    return DensityOperator(block_matrix(), {static_cast<Index>(size()), cond_dim_});
  }

  /// Marginal on the conditional factor: sum_j w_j rho_j.
  Matrix conditional_marginal() const {
    Matrix out = Matrix::Zero(cond_dim_, cond_dim_);
    for (std::size_t j = 0; j < size(); ++j) out += weights_[j] * conditionals_[j];
    return out;
  }

 private:
  std::vector<double> labels_;
  std::vector<double> weights_;
  std::vector<Matrix> conditionals_;
  Index cond_dim_ = 0;
};

/// Energy-outcome state: measure H's spectral projectors on the first factor
/// of rho_ar and keep the memory factors; blocks |e><e| (x) Tr_A{Pi^e rho_AR}.
inline CqState energy_measurement_state(const DensityOperator& rho_ar,
                                        const SpectralHamiltonian& h) {
  const std::vector<Index>& dims = rho_ar.subsystem_dims();
  if (dims[0] != h.dim())
    throw DimMismatch("energy_measurement_state: first factor does not match H");
  const Index d_r = rho_ar.dim() / h.dim();

  std::vector<double> labels, weights;
  std::vector<Matrix> conditionals;
  const Matrix ir = Matrix::Identity(d_r, d_r);
  for (std::size_t k = 0; k < h.level_count(); ++k) {
    const Matrix pe = tensor(h.projectors()[k], ir);
    Matrix block = partial_trace(pe * rho_ar.matrix() * pe, {h.dim(), d_r}, {1});
    hermitize(block);
    double w = block.trace().real();
    if (w < 0.0) w = 0.0;
    labels.push_back(h.energies()[k]);
    weights.push_back(w);
    conditionals.push_back(w > 1e-300 ? Matrix(block / w)
                                      : Matrix(ir / static_cast<double>(d_r)));
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= total;
  return CqState(std::move(labels), std::move(weights), std::move(conditionals));
}

/// Time-decohered clock state: sum_k p(k) |t_k><t_k| (x) e^{-iHt_k} rho e^{iHt_k}.
inline CqState clock_state(const DensityOperator& rho, const SpectralHamiltonian& h,
                           const TimeEnsemble& times) {
  if (times.kind != TimeEnsemble::Kind::Discrete)
    throw Error("clock_state: discrete time ensemble required");
  if (rho.dim() != h.dim()) throw DimMismatch("clock_state: dimensions differ");
  std::vector<double> labels = times.times;
  std::vector<Matrix> conditionals;
  conditionals.reserve(times.count());
  for (double t : times.times) conditionals.push_back(evolve(rho.matrix(), h, t));
  return CqState(std::move(labels), times.weights, std::move(conditionals));
}

/// (1/T) int_0^T e^{-iHt} rho e^{iHt} dt in closed form: the (e, e') block of
/// rho picks up the factor (e^{-i(e-e')T} - 1) / (-i(e-e')T), diagonal blocks
/// pass through.
inline DensityOperator time_averaged_state(const DensityOperator& rho,
                                           const SpectralHamiltonian& h, double t_final) {
  if (rho.dim() != h.dim()) throw DimMismatch("time_averaged_state: dimensions differ");
  if (!(t_final > 0.0)) throw Error("time_averaged_state: horizon must be positive");
  Matrix out = Matrix::Zero(h.dim(), h.dim());
  for (std::size_t k = 0; k < h.level_count(); ++k)
    for (std::size_t l = 0; l < h.level_count(); ++l) {
      const Matrix blk = h.projectors()[k] * rho.matrix() * h.projectors()[l];
      if (k == l) {
        out += blk;
      } else {
        const double gap = h.energies()[k] - h.energies()[l];
        const Cplx phase = Cplx(0.0, -gap * t_final);
        out += blk * ((std::exp(phase) - 1.0) / phase);
      }
    }
  hermitize(out);
  return DensityOperator(std::move(out), rho.subsystem_dims());
}

/// Default filler for truncation: the lowest-energy basis vector, projected.
inline DensityOperator default_truncation_filler(const SpectralHamiltonian& h) {
  const Matrix basis = h.level_basis(0);
  const Vector v = basis.col(0);
  return DensityOperator::from_pure(v);
}

struct TruncationResult {
  SpectralHamiltonian hamiltonian;  // restricted to the kept subspace
  DensityOperator state;            // on the kept subspace
  double tail_weight = 0.0;         // Tr{(I - Pi^E) rho}
  double distance_to_original = 0.0;  // (1/2) || rho^E - rho ||_1 in the full space
  bool unchanged = false;
};

/// Energy cutoff: keep levels with e <= cutoff, move the outside weight into
/// the filler state (which must be supported on the kept subspace), and
/// restrict both operators to that subspace.
inline TruncationResult truncate(const SpectralHamiltonian& h, const DensityOperator& rho,
                                 double cutoff,
                                 const std::optional<DensityOperator>& filler = {}) {
  if (rho.dim() != h.dim()) throw DimMismatch("truncate: dimensions differ");
  const double edge = cutoff + 1e-12 * std::max(1.0, std::abs(cutoff));
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < h.level_count(); ++k)
    if (h.energies()[k] <= edge) kept.push_back(k);
  if (kept.empty()) throw EmptyTruncation("truncate: no level at or below the cutoff");

  if (kept.size() == h.level_count())
    return {h, rho, 0.0, 0.0, true};

  Matrix pi = Matrix::Zero(h.dim(), h.dim());
  for (std::size_t k : kept) pi += h.projectors()[k];

  const DensityOperator omega = filler ? *filler : default_truncation_filler(h);
  if (omega.dim() != h.dim()) throw DimMismatch("truncate: filler dimension differs");
  if (max_abs(pi * omega.matrix() * pi - omega.matrix()) > 1e-9)
    throw FillerOutsideSubspace("truncate: filler not supported below the cutoff");

  double tail = 1.0 - (pi * rho.matrix() * pi).trace().real();
  tail = std::max(0.0, tail);
  Matrix projected_full = pi * rho.matrix() * pi + tail * omega.matrix();
  hermitize(projected_full);
  const double dist = 0.5 * trace_norm(projected_full - rho.matrix());

  // Orthonormal basis of the kept subspace, level by level.
  std::vector<Index> offsets;
  Index m = 0;
  for (std::size_t k : kept) {
    offsets.push_back(m);
    m += static_cast<Index>(std::lround(h.projectors()[k].trace().real()));
  }
  Matrix v(h.dim(), m);
  std::vector<double> energies;
  std::vector<Matrix> projectors;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const Matrix basis = h.level_basis(kept[i]);
    v.block(0, offsets[i], h.dim(), basis.cols()) = basis;
    energies.push_back(h.energies()[kept[i]]);
    Matrix p = Matrix::Zero(m, m);
    p.block(offsets[i], offsets[i], basis.cols(), basis.cols()) =
        Matrix::Identity(basis.cols(), basis.cols());
    projectors.push_back(std::move(p));
  }

  Matrix small = v.adjoint() * projected_full * v;
  hermitize(small);
  small /= small.trace().real();

  return {SpectralHamiltonian(m, std::move(energies), std::move(projectors), h.grouping_tol()),
          DensityOperator(std::move(small)), tail, dist, false};
}

}  // namespace clockbound

#endif  // CLOCKBOUND_CLOCK_STATES_HPP
