// Test-side oracles, kept independent of the library implementation paths
// they are used to check.

#ifndef CLOCKBOUND_TESTS_ORACLES_HPP
#define CLOCKBOUND_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

/// Hand-rolled qubit evolution in the sigma_z eigenbasis (energies +k, -k on
/// |0>, |1>): |psi(t)> = e^{-i k t}a|0> + e^{+i k t}b|1>.
inline Vector evolve_qubit_sz(const Vector& psi, double kappa, double t) {
  Vector out(2);
  out(0) = std::exp(Cplx(0.0, -kappa * t)) * psi(0);
  out(1) = std::exp(Cplx(0.0, kappa * t)) * psi(1);
  return out;
}

/// Explicit projector-sum pinching against independently supplied projectors.
inline Matrix pinch_with(const std::vector<Matrix>& projectors, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& p : projectors) out += p * rho * p;
  return out;
}

/// Index-sum partial trace over the second factor of a (da x db) system.
inline Matrix trace_out_second(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(da, da);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

/// Index-sum partial trace over the first factor.
inline Matrix trace_out_first(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l)
      for (int i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
  return out;
}

/// Arimoto conditional Renyi entropy of a joint classical distribution
/// p(x, y), conditioning on y:
///   H_a(X|Y) = a/(1-a) log2 sum_y ( sum_x p(x,y)^a )^{1/a}.
inline double arimoto_conditional(const Eigen::MatrixXd& pxy, double alpha) {
  if (alpha == 1.0) {
    double hxy = 0.0, hy = 0.0;
    for (int y = 0; y < pxy.cols(); ++y) {
      double py = 0.0;
      for (int x = 0; x < pxy.rows(); ++x) {
        const double p = pxy(x, y);
        if (p > 0.0) hxy -= p * std::log2(p);
        py += p;
      }
      if (py > 0.0) hy -= py * std::log2(py);
    }
    return hxy - hy;
  }
  if (std::isinf(alpha)) {
    double sum = 0.0;
    for (int y = 0; y < pxy.cols(); ++y) sum += pxy.col(y).maxCoeff();
    return -std::log2(sum);
  }
  double sum = 0.0;
  for (int y = 0; y < pxy.cols(); ++y) {
    double inner = 0.0;
    for (int x = 0; x < pxy.rows(); ++x) inner += std::pow(pxy(x, y), alpha);
    sum += std::pow(inner, 1.0 / alpha);
  }
  return alpha / (1.0 - alpha) * std::log2(sum);
}

/// Dense-grid trapezoid integral of f over [0, T], n nodes.
template <class Fn>
double trapezoid(Fn f, double t_final, int nodes = 10001) {
  const double h = t_final / (nodes - 1);
  double acc = 0.5 * (f(0.0) + f(t_final));
  for (int i = 1; i + 1 < nodes; ++i) acc += f(h * i);
  return acc * h;
}

/// Brute-force classical relative entropy sum p log2(p/q).
inline double classical_kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += p[i] * std::log2(p[i] / q[i]);
  return s;
}

/// GF(2) Toeplitz hash by explicit matrix assembly.
inline std::vector<int> toeplitz_by_matrix(const std::vector<int>& raw, std::size_t out_len,
                                           const std::vector<int>& seed) {
  const std::size_t n = raw.size();
  std::vector<std::vector<int>> t(out_len, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < out_len; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = seed[n - 1 + i - j];
  std::vector<int> out(out_len, 0);
  for (std::size_t i = 0; i < out_len; ++i) {
    int acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc ^= t[i][j] & raw[j];
    out[i] = acc;
  }
  return out;
}

}  // namespace oracles

#endif  // CLOCKBOUND_TESTS_ORACLES_HPP
