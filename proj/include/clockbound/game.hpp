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

#ifndef CLOCKBOUND_GAME_HPP
#define CLOCKBOUND_GAME_HPP

#include <utility>

#include "clockbound/clock_states.hpp"
#include "clockbound/rng.hpp"

namespace clockbound {

/// Optimal binary discrimination: p_win = (1 + || prior rho0 - (1-prior) rho1 ||_1)/2,
/// with the POVM cut along the positive eigenspace of the weighted difference.
inline std::pair<double, std::vector<Matrix>> helstrom_discrimination(
    const DensityOperator& rho0, const DensityOperator& rho1, double prior = 0.5) {
  require_same_dim(rho0.matrix(), rho1.matrix(), "helstrom_discrimination");
  if (prior < 0.0 || prior > 1.0) throw Error("helstrom_discrimination: prior outside [0,1]");
  const Matrix diff = prior * rho0.matrix() - (1.0 - prior) * rho1.matrix();
  const EigenSystem es = herm_eig(diff);
  const Index d = rho0.dim();
  Matrix m0 = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i)
    if (es.values(i) > 0.0) m0 += es.vectors.col(i) * es.vectors.col(i).adjoint();
  const double p_win = 0.5 * (1.0 + es.values.cwiseAbs().sum());
  return {p_win, {m0, Matrix::Identity(d, d) - m0}};
}

/// Pretty-good measurement for a labeled ensemble: elements
/// avg^{-1/2} (w_k rho_k) avg^{-1/2} on the support of the average, the
/// off-support remainder folded into the last element. The returned success
/// probability lower-bounds the optimal guessing probability 2^{-S_inf}.
inline std::pair<double, std::vector<Matrix>> pretty_good_measurement(const CqState& ensemble) {
  const Matrix avg = ensemble.conditional_marginal();
  const Matrix root_inv = matrix_power_psd(avg, -0.5);
  const Index d = ensemble.conditional_dim();
  std::vector<Matrix> povm;
  Matrix total = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < ensemble.size(); ++k) {
    Matrix e = root_inv * (ensemble.weights()[k] * ensemble.conditionals()[k]) * root_inv;
    hermitize(e);
    total += e;
    povm.push_back(std::move(e));
  }
  povm.back() += Matrix::Identity(d, d) - total;
  hermitize(povm.back());
  double p_win = 0.0;
  for (std::size_t k = 0; k < ensemble.size(); ++k)
    p_win += ensemble.weights()[k] * (povm[k] * ensemble.conditionals()[k]).trace().real();
  return {std::min(1.0, std::max(0.0, p_win)), povm};
}

enum class GameVariant {
  CoinFirst,    // branch chosen first, evolution only on the time branch
  EvolveFirst,  // evolution applied before the branch coin is flipped
};

enum class GameStrategy { Helstrom, PrettyGood, Custom };

struct GameConfig {
  DensityOperator rho_ar;  // clock (A) with optional memory factors (R)
  SpectralHamiltonian h;   // acts on A
  TimeEnsemble times;      // discrete
  long long trials = 100000;
  std::uint64_t rng_seed = 1;
  GameVariant variant = GameVariant::CoinFirst;
  GameStrategy strategy = GameStrategy::Helstrom;
  std::vector<Matrix> custom_time_povm;
};

struct GameResult {
  long long time_branch_wins = 0;
  long long energy_branch_wins = 0;
  long long time_branch_trials = 0;
  long long energy_branch_trials = 0;
  double empirical_p_win = 0.0;
  double predicted_p_win = 0.0;
  double predicted_time_branch_p = 0.0;
  double predicted_energy_branch_p = 0.0;
  double std_error = 0.0;
};

namespace detail {

inline std::size_t sample_index(const std::vector<double>& weights, double u) {
  double acc = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += weights[k];
    if (u < acc) return k;
  }
  return weights.size() - 1;
}

/// Born sampling: outcome probabilities Tr[POVM_k state], computed exactly.
inline std::size_t sample_povm(const std::vector<Matrix>& povm, const Matrix& state,
                               double u) {
  double acc = 0.0;
  for (std::size_t k = 0; k < povm.size(); ++k) {
    acc += std::max(0.0, (povm[k] * state).trace().real());
    if (u < acc) return k;
  }
  return povm.size() - 1;
}

}  // namespace detail

/// Monte Carlo run of the energy-time guessing game. A fair coin selects the
/// branch; the energy branch samples a measured energy and the guesser
/// answers from the memory factor (or the most likely energy when there is
/// none), the time branch samples an evolution time and the guesser measures
/// the configured POVM. Exact Born probabilities drive every draw, and trial
/// i consumes only the (seed, i) substream, so results are reproducible
/// bit-for-bit and independent of scheduling.
inline GameResult simulate_game(const GameConfig& config) {
  if (config.trials < 1) throw Error("simulate_game: need at least one trial");
  if (config.times.kind != TimeEnsemble::Kind::Discrete)
    throw Error("simulate_game: discrete time ensemble required");

  const std::vector<Index>& dims = config.rho_ar.subsystem_dims();
  const DensityOperator rho_a =
      dims.size() > 1 ? partial_trace(config.rho_ar, {0}) : config.rho_ar;
  const Index d_r = config.rho_ar.dim() / config.h.dim();

  // Time branch: evolved clock ensemble and the guesser's POVM.
  const CqState kappa = clock_state(rho_a, config.h, config.times);
  std::vector<Matrix> time_povm;
  switch (config.strategy) {
    case GameStrategy::Helstrom: {
      if (config.times.count() != 2)
        throw InvalidStrategy("simulate_game: Helstrom needs exactly two times");
      auto [p, povm] = helstrom_discrimination(
          DensityOperator(kappa.conditionals()[0]), DensityOperator(kappa.conditionals()[1]),
          config.times.weights[0]);
      (void)p;
      time_povm = std::move(povm);
      break;
    }
    case GameStrategy::PrettyGood: {
      time_povm = pretty_good_measurement(kappa).second;
      break;
    }
    case GameStrategy::Custom: {
      if (config.custom_time_povm.size() != config.times.count())
        throw InvalidStrategy("simulate_game: custom POVM must have one element per time");
      Matrix total = Matrix::Zero(rho_a.dim(), rho_a.dim());
      for (const Matrix& e : config.custom_time_povm) {
        if (e.rows() != rho_a.dim() || e.cols() != rho_a.dim())
          throw InvalidStrategy("simulate_game: custom POVM dimension mismatch");
        if (herm_eig(e).values.minCoeff() < -1e-9)
          throw InvalidStrategy("simulate_game: custom POVM element not PSD");
        total += e;
      }
      if (max_abs(total - Matrix::Identity(rho_a.dim(), rho_a.dim())) > 1e-9)
        throw InvalidStrategy("simulate_game: custom POVM does not resolve the identity");
      time_povm = config.custom_time_povm;
      break;
    }
  }
  double predicted_time = 0.0;
  for (std::size_t k = 0; k < kappa.size(); ++k)
    predicted_time +=
        kappa.weights()[k] * (time_povm[k] * kappa.conditionals()[k]).trace().real();

  // Energy branch: guess the measured energy from the memory conditionals.
  const CqState omega = energy_measurement_state(config.rho_ar, config.h);
  std::vector<Matrix> energy_povm;
  std::size_t fixed_guess = 0;
  double predicted_energy = 0.0;
  if (d_r == 1) {
    for (std::size_t k = 1; k < omega.size(); ++k)
      if (omega.weights()[k] > omega.weights()[fixed_guess]) fixed_guess = k;
    predicted_energy = omega.weights()[fixed_guess];
  } else {
    if (omega.size() == 2) {
      energy_povm = helstrom_discrimination(DensityOperator(omega.conditionals()[0]),
                                            DensityOperator(omega.conditionals()[1]),
                                            omega.weights()[0])
                        .second;
    } else {
      energy_povm = pretty_good_measurement(omega).second;
    }
    for (std::size_t k = 0; k < omega.size(); ++k)
      predicted_energy +=
          omega.weights()[k] * (energy_povm[k] * omega.conditionals()[k]).trace().real();
  }

  GameResult result;
  result.predicted_time_branch_p = predicted_time;
  result.predicted_energy_branch_p = predicted_energy;
  result.predicted_p_win = 0.5 * (predicted_time + predicted_energy);

  for (long long trial = 0; trial < config.trials; ++trial) {
    CounterRng rng(config.rng_seed, static_cast<std::uint64_t>(trial));
    bool energy_branch;
    std::size_t time_index = 0;
    if (config.variant == GameVariant::CoinFirst) {
      energy_branch = rng.uniform() < 0.5;
      if (!energy_branch) time_index = detail::sample_index(config.times.weights, rng.uniform());
    } else {
      // Evolution happens first; it does not disturb the energy statistics.
      time_index = detail::sample_index(config.times.weights, rng.uniform());
      energy_branch = rng.uniform() < 0.5;
    }

    if (energy_branch) {
      ++result.energy_branch_trials;
      const std::size_t truth = detail::sample_index(omega.weights(), rng.uniform());
      std::size_t guess;
      if (d_r == 1) {
        guess = fixed_guess;
      } else {
        guess = detail::sample_povm(energy_povm, omega.conditionals()[truth], rng.uniform());
      }
      if (guess == truth) ++result.energy_branch_wins;
    } else {
      ++result.time_branch_trials;
      const std::size_t guess =
          detail::sample_povm(time_povm, kappa.conditionals()[time_index], rng.uniform());
      if (guess == time_index) ++result.time_branch_wins;
    }
  }

  result.empirical_p_win =
      static_cast<double>(result.time_branch_wins + result.energy_branch_wins) /
      static_cast<double>(config.trials);
  result.std_error = std::sqrt(result.empirical_p_win * (1.0 - result.empirical_p_win) /
                               static_cast<double>(config.trials));
  return result;
}

}  // namespace clockbound

#endif  // CLOCKBOUND_GAME_HPP
