#include <doctest.h>

#include "clockbound/conditional.hpp"
#include "clockbound/game.hpp"
#include "clockbound/random_states.hpp"
#include "oracles.hpp"

using namespace clockbound;

namespace {

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Cplx(0, -1), Cplx(0, 1), 0;
  return m;
}

Vector plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("Helstrom: identical, orthogonal, and |0> vs |+> pairs") {
  DensityOperator zero = DensityOperator::from_pure((Vector(2) << 1, 0).finished());
  DensityOperator one = DensityOperator::from_pure((Vector(2) << 0, 1).finished());
  DensityOperator plus = DensityOperator::from_pure(plus_state());

  CHECK(helstrom_discrimination(zero, zero, 0.5).first == doctest::Approx(0.5));
  CHECK(helstrom_discrimination(zero, zero, 0.9).first == doctest::Approx(0.9));
  CHECK(helstrom_discrimination(zero, one, 0.5).first == doctest::Approx(1.0));
  CHECK(helstrom_discrimination(zero, plus, 0.5).first ==
        doctest::Approx((1.0 + 1.0 / std::sqrt(2.0)) / 2.0).epsilon(1e-12));

  // POVM resolves the identity and reproduces the predicted win probability
  auto [p, povm] = helstrom_discrimination(zero, plus, 0.5);
  CHECK(max_abs(povm[0] + povm[1] - Matrix::Identity(2, 2)) < 1e-12);
  const double check = 0.5 * (povm[0] * zero.matrix()).trace().real() +
                       0.5 * (povm[1] * plus.matrix()).trace().real();
  CHECK(check == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("pretty-good measurement: orthogonal and identical ensembles") {
  DensityOperator zero = DensityOperator::from_pure((Vector(2) << 1, 0).finished());
  DensityOperator one = DensityOperator::from_pure((Vector(2) << 0, 1).finished());
  CqState orth({0, 1}, {0.5, 0.5}, {zero.matrix(), one.matrix()});
  CHECK(pretty_good_measurement(orth).first == doctest::Approx(1.0).epsilon(1e-12));

  CqState same({0, 1, 2}, {1.0 / 3, 1.0 / 3, 1.0 / 3},
               {zero.matrix(), zero.matrix(), zero.matrix()});
  CHECK(pretty_good_measurement(same).first == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("pretty-good measurement on the evolved trine is sandwiched by the optimum") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  DensityOperator plus = DensityOperator::from_pure(plus_state());
  const TimeEnsemble times = TimeEnsemble::discrete({0.0, M_PI / 3.0, 2.0 * M_PI / 3.0});
  CqState kappa = clock_state(plus, h, times);
  auto [p_pgm, povm] = pretty_good_measurement(kappa);

  Matrix total = Matrix::Zero(2, 2);
  for (const Matrix& e : povm) total += e;
  CHECK(max_abs(total - Matrix::Identity(2, 2)) < 1e-10);

  EntropyResult s_inf = conditional_renyi(kappa.as_density(), {1}, RenyiOrder::infinity());
  const double p_opt = std::exp2(-s_inf.value);
  CHECK(p_pgm >= 1.0 / 3.0 - 1e-12);
  CHECK(p_pgm <= p_opt + 1e-9);
}

TEST_CASE("Helstrom attains the min-entropy optimum for two-element clocks") {
  CounterRng rng(501);
  for (int rep = 0; rep < 4; ++rep) {
    SpectralHamiltonian h = spectral_decompose(random_hermitian(2, rng));
    DensityOperator rho = random_density(2, 2, rng);
    CqState kappa = clock_state(rho, h, TimeEnsemble::discrete({0.0, rng.uniform(0.2, 2.0)}));
    const double p_hel =
        helstrom_discrimination(DensityOperator(kappa.conditionals()[0]),
                                DensityOperator(kappa.conditionals()[1]), 0.5)
            .first;
    EntropyResult s_inf = conditional_renyi(kappa.as_density(), {1}, RenyiOrder::infinity());
    CHECK(p_hel == doctest::Approx(std::exp2(-s_inf.value)).epsilon(1e-6));
  }
}

TEST_CASE("simulate: orthogonal clock pair is guessed perfectly") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  GameConfig config{DensityOperator::from_pure(plus_state()),
                    h,
                    TimeEnsemble::discrete({0.0, M_PI / 2.0}),
                    20000,
                    7,
                    GameVariant::CoinFirst,
                    GameStrategy::Helstrom,
                    {}};
  GameResult r = simulate_game(config);
  CHECK(r.predicted_time_branch_p == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.time_branch_wins == r.time_branch_trials);
  CHECK(r.time_branch_trials + r.energy_branch_trials == 20000);
}

TEST_CASE("simulate: eigenstate clock wins the energy branch, guesses time at chance") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  GameConfig config{DensityOperator::from_pure((Vector(2) << 1, 0).finished()),
                    h,
                    TimeEnsemble::discrete({0.0, 0.7}),
                    40000,
                    11,
                    GameVariant::CoinFirst,
                    GameStrategy::Helstrom,
                    {}};
  GameResult r = simulate_game(config);
  CHECK(r.predicted_energy_branch_p == doctest::Approx(1.0));
  CHECK(r.energy_branch_wins == r.energy_branch_trials);
  const double time_rate =
      static_cast<double>(r.time_branch_wins) / static_cast<double>(r.time_branch_trials);
  const double sigma = std::sqrt(0.5 * 0.5 / static_cast<double>(r.time_branch_trials));
  CHECK(std::abs(time_rate - 0.5) < 4.0 * sigma);
}

TEST_CASE("simulate: |0>/|+> pair matches the Helstrom prediction") {
  SpectralHamiltonian h = spectral_decompose(pauli_y());
  GameConfig config{DensityOperator::from_pure((Vector(2) << 1, 0).finished()),
                    h,
                    TimeEnsemble::discrete({0.0, M_PI / 4.0}),
                    100000,
                    42,
                    GameVariant::CoinFirst,
                    GameStrategy::Helstrom,
                    {}};
  GameResult r = simulate_game(config);
  const double expect = (1.0 + 1.0 / std::sqrt(2.0)) / 2.0;
  CHECK(r.predicted_time_branch_p == doctest::Approx(expect).epsilon(1e-12));
  const double rate =
      static_cast<double>(r.time_branch_wins) / static_cast<double>(r.time_branch_trials);
  const double sigma = std::sqrt(expect * (1.0 - expect) / static_cast<double>(r.time_branch_trials));
  CHECK(std::abs(rate - expect) < 3.0 * sigma);
}

TEST_CASE("simulate: quantum memory lifts the energy branch above the no-memory guess") {
  CounterRng rng(509);
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  DensityOperator purified = purify(DensityOperator::maximally_mixed(2));
  GameConfig config{purified,
                    h,
                    TimeEnsemble::discrete({0.0, 0.9}),
                    20000,
                    13,
                    GameVariant::CoinFirst,
                    GameStrategy::Helstrom,
                    {}};
  GameResult r = simulate_game(config);
  // maximally mixed marginal: blind guessing gives 1/2, the memory gives 1
  CHECK(r.predicted_energy_branch_p == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.energy_branch_wins == r.energy_branch_trials);
}

TEST_CASE("simulate: empirical time wins never beat the min-entropy optimum") {
  CounterRng rng(521);
  for (int rep = 0; rep < 5; ++rep) {
    SpectralHamiltonian h = spectral_decompose(random_hermitian(2, rng));
    DensityOperator rho = random_density(2, 2, rng);
    std::vector<double> ts{0.0, rng.uniform(0.3, 1.5), rng.uniform(1.5, 3.0)};
    GameConfig config{rho,
                      h,
                      TimeEnsemble::discrete(ts),
                      20000,
                      100 + static_cast<std::uint64_t>(rep),
                      GameVariant::CoinFirst,
                      GameStrategy::PrettyGood,
                      {}};
    GameResult r = simulate_game(config);
    CqState kappa = clock_state(rho, h, config.times);
    EntropyResult s_inf = conditional_renyi(kappa.as_density(), {1}, RenyiOrder::infinity());
    const double p_opt = std::exp2(-s_inf.value);
    const double rate =
        static_cast<double>(r.time_branch_wins) / static_cast<double>(r.time_branch_trials);
    const double sigma =
        std::sqrt(std::max(p_opt * (1.0 - p_opt), 1e-4) / static_cast<double>(r.time_branch_trials));
    CHECK(rate <= p_opt + 3.0 * sigma);
    CHECK(r.predicted_time_branch_p <= p_opt + 1e-9);
  }
}

TEST_CASE("simulate: the two variants agree statistically") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  DensityOperator rho = DensityOperator::from_pure(plus_state());
  GameConfig base{rho,
                  h,
                  TimeEnsemble::discrete({0.0, 0.6}),
                  100000,
                  3,
                  GameVariant::CoinFirst,
                  GameStrategy::Helstrom,
                  {}};
  GameConfig alt = base;
  alt.variant = GameVariant::EvolveFirst;
  GameResult a = simulate_game(base);
  GameResult b = simulate_game(alt);
  const double pa = a.empirical_p_win, pb = b.empirical_p_win;
  const double pooled = 0.5 * (pa + pb);
  const double z = (pa - pb) / std::sqrt(pooled * (1.0 - pooled) *
                                         (1.0 / a.predicted_p_win / 100000 +
                                          1.0 / b.predicted_p_win / 100000));
  // two-proportion z-test with n = trials on each side
  const double z_simple =
      (pa - pb) / std::sqrt(pooled * (1.0 - pooled) * (2.0 / 100000.0));
  (void)z;
  CHECK(std::abs(z_simple) < 4.0);
  CHECK(a.predicted_p_win == doctest::Approx(b.predicted_p_win).epsilon(1e-12));
}

TEST_CASE("simulate: identical seeds reproduce results bit-for-bit") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  GameConfig config{DensityOperator::from_pure(plus_state()),
                    h,
                    TimeEnsemble::discrete({0.0, 0.8}),
                    5000,
                    77,
                    GameVariant::CoinFirst,
                    GameStrategy::Helstrom,
                    {}};
  GameResult a = simulate_game(config);
  GameResult b = simulate_game(config);
  CHECK(a.time_branch_wins == b.time_branch_wins);
  CHECK(a.energy_branch_wins == b.energy_branch_wins);
  CHECK(a.time_branch_trials == b.time_branch_trials);
  CHECK(a.empirical_p_win == b.empirical_p_win);

  GameConfig other = config;
  other.rng_seed = 78;
  GameResult c = simulate_game(other);
  CHECK(a.time_branch_wins != c.time_branch_wins);
}

TEST_CASE("simulate: invalid strategies are rejected") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  GameConfig config{DensityOperator::from_pure(plus_state()),
                    h,
                    TimeEnsemble::discrete({0.0, 0.5, 1.0}),
                    10,
                    1,
                    GameVariant::CoinFirst,
                    GameStrategy::Helstrom,
                    {}};
  CHECK_THROWS_AS(simulate_game(config), InvalidStrategy);  // Helstrom needs two times

  config.strategy = GameStrategy::Custom;
  config.custom_time_povm = {Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(simulate_game(config), InvalidStrategy);  // wrong element count
}
