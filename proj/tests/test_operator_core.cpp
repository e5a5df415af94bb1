#include <doctest.h>

#include "clockbound/density.hpp"
#include "clockbound/random_states.hpp"
#include "clockbound/spectral.hpp"
#include "oracles.hpp"

using namespace clockbound;

namespace {

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Vector ket(int i, Index dim = 2) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  return v;
}

Vector plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("spectral_decompose: identity collapses to a single level") {
  SpectralHamiltonian h = spectral_decompose(Matrix::Identity(2, 2), 1e-9);
  CHECK(h.level_count() == 1);
  CHECK(h.energies()[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs(h.projectors()[0] - Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("spectral_decompose: pauli-z levels in ascending order") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  REQUIRE(h.level_count() == 2);
  CHECK(h.energies()[0] == doctest::Approx(-1.0));
  CHECK(h.energies()[1] == doctest::Approx(1.0));
  CHECK(max_abs(h.projectors()[0] - ket(1) * ket(1).adjoint()) < 1e-12);
  CHECK(max_abs(h.projectors()[1] - ket(0) * ket(0).adjoint()) < 1e-12);
}

TEST_CASE("spectral_decompose: planted double eigenvalue is grouped") {
  CounterRng rng(11);
  const Matrix u = random_unitary(6, rng);
  Eigen::VectorXd diag(6);
  diag << 0, 1, 2, 2, 3, 4;
  const Matrix m = u * diag.asDiagonal() * u.adjoint();
  SpectralHamiltonian h = spectral_decompose(m, 1e-9);
  REQUIRE(h.level_count() == 5);
  CHECK(h.energies()[2] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(h.projectors()[2].trace().real() == doctest::Approx(2.0).epsilon(1e-10));
  // reconstruction against the planting unitary
  Matrix rebuilt = h.to_matrix();
  CHECK(max_abs(rebuilt - m) < 1e-8 * max_abs(m));
  // the rank-2 projector must match the planted eigenvectors' span
  const Matrix planted = u.col(2) * u.col(2).adjoint() + u.col(3) * u.col(3).adjoint();
  CHECK(max_abs(h.projectors()[2] - planted) < 1e-8);
}

TEST_CASE("spectral_decompose rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(spectral_decompose(m), NotHermitian);
}

TEST_CASE("evolve: t = 0 and stationary states are fixed points") {
  CounterRng rng(5);
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  DensityOperator rho = random_density(2, 2, rng);
  CHECK(max_abs(evolve(rho, h, 0.0).matrix() - rho.matrix()) < 1e-12);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.3;
  diag(1, 1) = 0.7;
  DensityOperator stat(diag);
  CHECK(max_abs(evolve(stat, h, 1.37).matrix() - stat.matrix()) < 1e-12);
}

TEST_CASE("evolve: |+> under sigma_z for a quarter period reaches |->") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  DensityOperator plus = DensityOperator::from_pure(plus_state());
  DensityOperator evolved = evolve(plus, h, M_PI / 2.0);
  Vector minus(2);
  minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  CHECK(max_abs(evolved.matrix() - minus * minus.adjoint()) < 1e-12);
  // cross-check against the hand-rolled qubit propagator
  const Vector by_hand = oracles::evolve_qubit_sz(plus_state(), 1.0, M_PI / 2.0);
  CHECK(max_abs(evolved.matrix() - by_hand * by_hand.adjoint()) < 1e-12);
}

TEST_CASE("evolve is a one-parameter group") {
  CounterRng rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    SpectralHamiltonian h = spectral_decompose(random_hermitian(3, rng));
    DensityOperator rho = random_density(3, 3, rng);
    const double s = rng.uniform(-2.0, 2.0), t = rng.uniform(-2.0, 2.0);
    const Matrix two_step = evolve(evolve(rho, h, s), h, t).matrix();
    const Matrix one_step = evolve(rho, h, s + t).matrix();
    CHECK(max_abs(two_step - one_step) < 1e-9);
    // unitarity: spectrum preserved
    CHECK(std::abs(two_step.trace().real() - 1.0) < 1e-10);
  }
}

TEST_CASE("pinch: fixed points and full decoherence") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 0.25;
  diag(1, 1) = 0.75;
  CHECK(max_abs(pinch(DensityOperator(diag), h).matrix() - diag) < 1e-12);

  DensityOperator plus = DensityOperator::from_pure(plus_state());
  CHECK(max_abs(pinch(plus, h).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-12);
}

TEST_CASE("pinch matches the explicit projector sum on a degenerate spectrum") {
  CounterRng rng(23);
  const Matrix u = random_unitary(4, rng);
  Eigen::VectorXd diag(4);
  diag << 0, 1, 1, 2;
  const Matrix m = u * diag.asDiagonal() * u.adjoint();
  SpectralHamiltonian h = spectral_decompose(m);
  REQUIRE(h.level_count() == 3);

  std::vector<Matrix> projectors = {
      u.col(0) * u.col(0).adjoint(),
      u.col(1) * u.col(1).adjoint() + u.col(2) * u.col(2).adjoint(),
      u.col(3) * u.col(3).adjoint()};
  DensityOperator rho = random_density(4, 4, rng);
  const Matrix expect = oracles::pinch_with(projectors, rho.matrix());
  CHECK(max_abs(pinch(rho, h).matrix() - expect) < 1e-9);
}

TEST_CASE("pinch is idempotent, trace preserving, and commutes with H") {
  CounterRng rng(29);
  SpectralHamiltonian h = spectral_decompose(random_hermitian(4, rng));
  DensityOperator rho = random_density(4, 2, rng);
  DensityOperator once = pinch(rho, h);
  DensityOperator twice = pinch(once, h);
  CHECK(max_abs(once.matrix() - twice.matrix()) < 1e-11);
  CHECK(std::abs(once.matrix().trace().real() - 1.0) < 1e-12);
  const Matrix hm = h.to_matrix();
  CHECK(max_abs(hm * once.matrix() - once.matrix() * hm) < 1e-10);
  CHECK(once.eigensystem().values.minCoeff() > -1e-12);
}

TEST_CASE("tensor and partial_trace basics") {
  DensityOperator half = DensityOperator::maximally_mixed(2);
  DensityOperator quarter = tensor(half, half);
  CHECK(quarter.subsystem_dims() == std::vector<Index>{2, 2});
  CHECK(max_abs(quarter.matrix() - Matrix::Identity(4, 4) / 4.0) < 1e-14);

  Vector bell(4);
  bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
  DensityOperator ent = DensityOperator::from_pure(bell, {2, 2});
  CHECK(max_abs(partial_trace(ent, {0}).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-12);
}

TEST_CASE("partial_trace of a product recovers the factors") {
  CounterRng rng(31);
  for (int rep = 0; rep < 8; ++rep) {
    DensityOperator a = random_density(2, 2, rng);
    DensityOperator b = random_density(3, 2, rng);
    DensityOperator joint = tensor(a, b);
    CHECK(max_abs(partial_trace(joint, {0}).matrix() - a.matrix()) < 1e-12);
    CHECK(max_abs(partial_trace(joint, {1}).matrix() - b.matrix()) < 1e-12);
    // index-sum oracle
    CHECK(max_abs(partial_trace(joint, {0}).matrix() -
                  oracles::trace_out_second(joint.matrix(), 2, 3)) < 1e-12);
    CHECK(max_abs(partial_trace(joint, {1}).matrix() -
                  oracles::trace_out_first(joint.matrix(), 2, 3)) < 1e-12);
  }
}

TEST_CASE("reorder_subsystems permutes factors consistently") {
  CounterRng rng(37);
  DensityOperator a = random_density(2, 2, rng);
  DensityOperator b = random_density(3, 3, rng);
  DensityOperator ab = tensor(a, b);
  DensityOperator ba = reorder_subsystems(ab, {1, 0});
  CHECK(ba.subsystem_dims() == std::vector<Index>{3, 2});
  CHECK(max_abs(ba.matrix() - tensor(b, a).matrix()) < 1e-12);
}

TEST_CASE("purify: marginals and purity") {
  DensityOperator zero = DensityOperator::from_pure(ket(0));
  DensityOperator pz = purify(zero);
  CHECK(pz.is_pure(1e-12));
  CHECK(max_abs(partial_trace(pz, {0}).matrix() - zero.matrix()) < 1e-12);

  DensityOperator mixed = DensityOperator::maximally_mixed(2);
  DensityOperator pm = purify(mixed);
  CHECK(pm.is_pure(1e-10));
  CHECK(max_abs(partial_trace(pm, {0}).matrix() - mixed.matrix()) < 1e-10);

  CounterRng rng(41);
  DensityOperator qutrit = random_density(3, 3, rng);
  DensityOperator pq = purify(qutrit);
  CHECK(pq.is_pure(1e-10));
  CHECK(max_abs(partial_trace(pq, {0}).matrix() - qutrit.matrix()) < 1e-10);
}

TEST_CASE("fidelity and trace distance closed forms") {
  DensityOperator zero = DensityOperator::from_pure(ket(0));
  DensityOperator one = DensityOperator::from_pure(ket(1));
  DensityOperator plus = DensityOperator::from_pure(plus_state());

  CHECK(fidelity(zero, zero) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
  CHECK(fidelity(zero, one) == doctest::Approx(0.0));
  CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
  CHECK(fidelity(zero, plus) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(trace_distance(zero, plus) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("density operator validation: clamping and rejection") {
  // tiny negative eigenvalue is clamped and renormalized
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0 + 5e-11;
  m(1, 1) = -5e-11;
  DensityOperator rho(m);
  CHECK(rho.eigensystem().values.minCoeff() >= 0.0);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.1;
  bad(1, 1) = -0.1;
  CHECK_THROWS_AS(DensityOperator{bad}, NotPSD);

  Matrix off_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityOperator{off_trace}, NotAState);

  CHECK_THROWS_AS(partial_trace(rho, {2}), BadSubsystemSpec);
}

TEST_CASE("evolve and pinch reject dimension mismatches") {
  SpectralHamiltonian h = spectral_decompose(pauli_z());
  DensityOperator qutrit = DensityOperator::maximally_mixed(3);
  CHECK_THROWS_AS(evolve(qutrit, h, 1.0), DimMismatch);
  CHECK_THROWS_AS(pinch(qutrit, h), DimMismatch);
}
