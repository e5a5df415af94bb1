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

#ifndef CLOCKBOUND_RANDOM_STATES_HPP
#define CLOCKBOUND_RANDOM_STATES_HPP

#include <vector>

#include "clockbound/density.hpp"
#include "clockbound/linalg.hpp"
#include "clockbound/rng.hpp"

namespace clockbound {

// Seeded generators for random campaign instances. All draws go through
// CounterRng so campaigns reproduce bit-for-bit.

inline Vector random_complex_vector(Index dim, CounterRng& rng) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Cplx(rng.normal(), rng.normal());
  return v;
}

inline Matrix random_hermitian(Index dim, CounterRng& rng) {
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) g(i, j) = Cplx(rng.normal(), rng.normal());
  return 0.5 * (g + Matrix(g.adjoint()));
}

inline Vector random_pure(Index dim, CounterRng& rng) {
  Vector v = random_complex_vector(dim, rng);
  return v / v.norm();
}

inline Matrix random_unitary(Index dim, CounterRng& rng) {
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) g(i, j) = Cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const Cplx d = r(i, i);
    q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Cplx(1.0, 0.0);
  }
  return q;
}

inline DensityOperator random_density(Index dim, Index rank, CounterRng& rng,
                                      std::vector<Index> dims = {}) {
  Matrix w(dim, rank);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < rank; ++j) w(i, j) = Cplx(rng.normal(), rng.normal());
  Matrix m = w * w.adjoint();
  m /= m.trace().real();
  return DensityOperator(std::move(m), std::move(dims));
}

inline std::vector<double> random_distribution(std::size_t n, CounterRng& rng) {
  std::vector<double> p(n);
  double s = 0.0;
  for (double& x : p) {
    x = rng.uniform() + 1e-3;
    s += x;
  }
  for (double& x : p) x /= s;
  return p;
}

/// Random projective POVM on a dim-dimensional space: a Haar-random basis
/// grouped into n_outcomes contiguous blocks of near-equal rank.
inline std::vector<Matrix> random_projective_povm(Index dim, Index n_outcomes,
                                                  CounterRng& rng) {
  const Matrix u = random_unitary(dim, rng);
  std::vector<Matrix> povm;
  Index start = 0;
  for (Index k = 0; k < n_outcomes; ++k) {
    const Index len = dim / n_outcomes + (k < dim % n_outcomes ? 1 : 0);
    Matrix p = Matrix::Zero(dim, dim);
    for (Index c = start; c < start + len; ++c) p += u.col(c) * u.col(c).adjoint();
    povm.push_back(std::move(p));
    start += len;
  }
  return povm;
}

}  // namespace clockbound

#endif  // CLOCKBOUND_RANDOM_STATES_HPP
