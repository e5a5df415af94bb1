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

#ifndef CLOCKBOUND_RELATIONS_HPP
#define CLOCKBOUND_RELATIONS_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "clockbound/asymmetry.hpp"
#include "clockbound/clock_states.hpp"
#include "clockbound/conditional.hpp"
#include "clockbound/random_states.hpp"

namespace clockbound {

inline constexpr double kSlackTol = 1e-6;

enum class RelationId {
  PureState,       // pure clock, classical energy term
  Main,            // memory-assisted discrete-time relation
  MemorySplit,     // memory split between the time and energy terms
  VonNeumann,      // order-1 special case
  Nonuniform,      // weighted times, exact identity form
  Asymmetry,       // asymmetry form of the energy term
  Continuous,      // continuous-time, von Neumann case
  SpeedLimit,
  MinMax,
};

inline const char* to_string(RelationId id) {
  switch (id) {
    case RelationId::PureState: return "pure_state";
    case RelationId::Main: return "main";
    case RelationId::MemorySplit: return "memory_split";
    case RelationId::VonNeumann: return "von_neumann";
    case RelationId::Nonuniform: return "nonuniform";
    case RelationId::Asymmetry: return "asymmetry";
    case RelationId::Continuous: return "continuous";
    case RelationId::SpeedLimit: return "speed_limit";
    case RelationId::MinMax: return "minmax";
  }
  return "unknown";
}

struct AuditTerm {
  std::string name;
  double value = 0.0;
  double residual = 0.0;
  bool converged = true;
};

/// One audited relation instance: named left-hand-side terms, the bound, and
/// solver diagnostics. Every lhs term comes from an explicit feasible
/// optimizer, so an under-converged solver can only under-report the total;
/// a slack below -tolerance therefore flags a genuine problem, never a lucky
/// pass.
struct AuditReport {
  RelationId relation = RelationId::Main;
  double alpha = 1.0;
  double beta = 1.0;
  std::vector<AuditTerm> lhs_terms;
  double rhs = 0.0;
  double extra = std::numeric_limits<double>::quiet_NaN();
  std::string note;

  double lhs_total() const {
    double s = 0.0;
    for (const AuditTerm& t : lhs_terms) s += t.value;
    return s;
  }
  double slack() const { return lhs_total() - rhs; }

  bool all_converged() const {
    for (const AuditTerm& t : lhs_terms)
      if (!t.converged) return false;
    return true;
  }
};

namespace detail {

inline AuditTerm term_from(const std::string& name, const EntropyResult& r) {
  return {name, r.value, r.residual, r.converged};
}

inline void require_uniform(const TimeEnsemble& times, const char* who) {
  if (times.kind != TimeEnsemble::Kind::Discrete)
    throw Error(std::string(who) + ": discrete time ensemble required");
  if (!times.uniform_weights(1e-12))
    throw Error(std::string(who) + ": uniform time weights required");
}

}  // namespace detail

/// Memory-assisted relation: S_a(T|A) + S_b(E|R) >= log2 K for uniform times,
/// a in [1/2, inf], 1/a + 1/b = 2.
inline AuditReport audit_main(const DensityOperator& rho_ar, const SpectralHamiltonian& h,
                              const TimeEnsemble& times, const RenyiOrder& order,
                              const SolverOptions& opts = {}) {
  detail::require_uniform(times, "audit_main");
  const RenyiOrder beta = order.conjugate();

  const std::vector<Index>& dims = rho_ar.subsystem_dims();
  std::vector<Index> keep_a{0};
  const DensityOperator rho_a =
      dims.size() > 1 ? partial_trace(rho_ar, keep_a) : rho_ar;

  const CqState kappa = clock_state(rho_a, h, times);
  const EntropyResult time_term = conditional_renyi(kappa.as_density(), {1}, order, opts);

  const CqState omega = energy_measurement_state(rho_ar, h);
  const EntropyResult energy_term = conditional_renyi(omega.as_density(), {1}, beta, opts);

  AuditReport rep;
  rep.relation = RelationId::Main;
  rep.alpha = order.value();
  rep.beta = beta.value();
  rep.lhs_terms = {detail::term_from("time_uncertainty", time_term),
                   detail::term_from("energy_uncertainty", energy_term)};
  rep.rhs = std::log2(static_cast<double>(times.count()));
  return rep;
}

/// Asymmetry form: S_a(T|A) + inf_{[H,sigma]=0} D_a(rho_A || sigma) >= log2 K,
/// valid for every a in (0, inf].
inline AuditReport audit_asymmetry(const DensityOperator& rho_a, const SpectralHamiltonian& h,
                                   const TimeEnsemble& times, const RenyiOrder& order,
                                   const SolverOptions& opts = {}) {
  detail::require_uniform(times, "audit_asymmetry");
  const CqState kappa = clock_state(rho_a, h, times);
  const EntropyResult time_term = conditional_renyi(kappa.as_density(), {1}, order, opts);
  const AsymmetryResult asym = renyi_asymmetry(rho_a, h, order, opts);

  AuditReport rep;
  rep.relation = RelationId::Asymmetry;
  rep.alpha = order.value();
  rep.beta = std::numeric_limits<double>::quiet_NaN();
  rep.lhs_terms = {detail::term_from("time_uncertainty", time_term),
                   {"energy_uncertainty", asym.value, asym.residual, asym.converged}};
  rep.rhs = std::log2(static_cast<double>(times.count()));
  return rep;
}

/// Pure-state relation: the energy term is the classical Renyi entropy of the
/// measured-energy distribution.
inline AuditReport audit_pure(const DensityOperator& psi, const SpectralHamiltonian& h,
                              const TimeEnsemble& times, const RenyiOrder& order,
                              const SolverOptions& opts = {}) {
  if (!psi.is_pure()) throw NotPure("audit_pure: state is not pure");
  detail::require_uniform(times, "audit_pure");
  const RenyiOrder beta = order.conjugate();

  const CqState kappa = clock_state(psi, h, times);
  const EntropyResult time_term = conditional_renyi(kappa.as_density(), {1}, order, opts);

  RealVector p(static_cast<Index>(h.level_count()));
  for (std::size_t k = 0; k < h.level_count(); ++k)
    p(static_cast<Index>(k)) = (h.projectors()[k] * psi.matrix()).trace().real();
  p = p.cwiseMax(0.0);
  p /= p.sum();

  AuditReport rep;
  rep.relation = RelationId::PureState;
  rep.alpha = order.value();
  rep.beta = beta.value();
  rep.lhs_terms = {detail::term_from("time_uncertainty", time_term),
                   {"energy_entropy", renyi_entropy(p, beta), 0.0, true}};
  rep.rhs = std::log2(static_cast<double>(times.count()));
  return rep;
}

/// Split-memory relation: S_a(T|A R1) + S_b(E|R2) >= log2 K on a tripartite
/// state (A, R1, R2), with H acting on A only.
inline AuditReport audit_split(const DensityOperator& rho_ar1r2,
                               const SpectralHamiltonian& h, const TimeEnsemble& times,
                               const RenyiOrder& order, const SolverOptions& opts = {}) {
  if (rho_ar1r2.subsystem_dims().size() != 3)
    throw BadSubsystemSpec("audit_split: need three factors (A,R1,R2)");
  detail::require_uniform(times, "audit_split");
  const RenyiOrder beta = order.conjugate();

  const DensityOperator rho_ar1 = partial_trace(rho_ar1r2, {0, 1});
  const Index d_r1 = rho_ar1.subsystem_dims()[1];
  const SpectralHamiltonian h_ar1 = extend(h, 1, d_r1);
  const CqState kappa = clock_state(
      DensityOperator(rho_ar1.matrix()), h_ar1, times);
  const EntropyResult time_term = conditional_renyi(kappa.as_density(), {1}, order, opts);

  const DensityOperator rho_ar2 = partial_trace(rho_ar1r2, {0, 2});
  const CqState omega = energy_measurement_state(rho_ar2, h);
  const EntropyResult energy_term = conditional_renyi(omega.as_density(), {1}, beta, opts);

  AuditReport rep;
  rep.relation = RelationId::MemorySplit;
  rep.alpha = order.value();
  rep.beta = beta.value();
  rep.lhs_terms = {detail::term_from("time_uncertainty", time_term),
                   detail::term_from("energy_uncertainty", energy_term)};
  rep.rhs = std::log2(static_cast<double>(times.count()));
  return rep;
}

/// Weighted-times von Neumann relation for pure rho_AR. Beyond the bound
/// lhs >= S(T), the exact decomposition
///   S(E|R) + S(T|A) = S(T) + D(kappa_A || pinch(rho_A))
/// must close to 1e-8; `extra` carries the identity gap and the relative
/// entropy D(kappa_A || pinch(rho_A)) is appended as a diagnostic term.
inline AuditReport audit_nonuniform(const DensityOperator& rho_ar,
                                    const SpectralHamiltonian& h,
                                    const TimeEnsemble& times) {
  if (!rho_ar.is_pure()) throw NotPure("audit_nonuniform: state is not pure");
  if (times.kind != TimeEnsemble::Kind::Discrete)
    throw Error("audit_nonuniform: discrete time ensemble required");

  const std::vector<Index>& dims = rho_ar.subsystem_dims();
  const DensityOperator rho_a =
      dims.size() > 1 ? partial_trace(rho_ar, {0}) : rho_ar;

  const CqState kappa = clock_state(rho_a, h, times);
  const DensityOperator kappa_ta = kappa.as_density();
  const double s_time = von_neumann_entropy(kappa_ta) -
                        von_neumann_entropy(kappa.conditional_marginal());

  const CqState omega = energy_measurement_state(rho_ar, h);
  const DensityOperator omega_er = omega.as_density();
  const double s_energy = von_neumann_entropy(omega_er) -
                          von_neumann_entropy(omega.conditional_marginal());

  RealVector w(static_cast<Index>(times.count()));
  for (std::size_t k = 0; k < times.count(); ++k)
    w(static_cast<Index>(k)) = times.weights[k];
  const double s_t = shannon_entropy(w);

  const Matrix pinched = pinch(rho_a.matrix(), h);
  const double residual = quantum_relative_entropy(kappa.conditional_marginal(), pinched);

  AuditReport rep;
  rep.relation = RelationId::Nonuniform;
  rep.alpha = 1.0;
  rep.beta = 1.0;
  rep.lhs_terms = {{"time_uncertainty", s_time, 0.0, true},
                   {"energy_uncertainty", s_energy, 0.0, true}};
  rep.rhs = s_t;
  rep.extra = (s_energy + s_time) - s_t - residual;  // identity gap
  if (std::abs(rep.extra) > 1e-6)
    throw Error("audit_nonuniform: exact identity violated beyond tolerance");
  rep.note = residual <= 1e-8 ? "equality_condition_met" : "";
  return rep;
}

/// Continuous-time von Neumann relation:
///   Gamma_H(rho) + s(T|A) >= log2 T_F.
/// `extra` reports the dimensionless rewriting log2(T_F) - s(T|A).
inline AuditReport audit_continuous(const DensityOperator& rho_a,
                                    const SpectralHamiltonian& h, double t_final,
                                    const QuadratureSpec& quad = {}) {
  const AsymmetryResult gamma = relative_entropy_of_asymmetry(rho_a, h);
  const DensityOperator averaged = time_averaged_state(rho_a, h, t_final);
  const double s_time = differential_conditional_entropy(
      [&](double t) { return evolve(rho_a.matrix(), h, t); }, t_final, averaged.matrix(),
      quad);

  AuditReport rep;
  rep.relation = RelationId::Continuous;
  rep.alpha = 1.0;
  rep.beta = 1.0;
  rep.lhs_terms = {{"time_uncertainty", s_time, quad.tol, true},
                   {"energy_uncertainty", gamma.value, 0.0, true}};
  rep.rhs = std::log2(t_final);
  rep.extra = std::log2(t_final) - s_time;
  return rep;
}

// ---------------------------------------------------------------------------
// Speed limits
// ---------------------------------------------------------------------------

struct SpeedLimitReport {
  double entropy_half = 0.0;  // S_b(E|R) at b = 1/2
  double entropy_one = 0.0;   //                b = 1
  double entropy_inf = 0.0;   //                b = inf
  double min_pairwise_fidelity = 1.0;
  std::optional<double> orthogonalizing_time;
  double delta_e = 0.0;  // energy standard deviation of rho_A
  double mt_time = 0.0;  // pi / (2 delta_e)
  int family_size = 2;
  bool contrapositive_ok = true;
};

/// Default search grid: 4096 points over one fundamental period when the
/// energy gaps are commensurate (2*pi / approximate gcd of the gaps), else
/// eight times 2*pi over the smallest gap.
inline std::vector<double> default_speed_limit_grid(const SpectralHamiltonian& h,
                                                    std::size_t points = 4096) {
  double horizon;
  if (h.level_count() < 2) {
    horizon = 1.0;
  } else {
    std::vector<double> gaps;
    for (std::size_t i = 0; i < h.level_count(); ++i)
      for (std::size_t j = i + 1; j < h.level_count(); ++j)
        gaps.push_back(std::abs(h.energies()[j] - h.energies()[i]));
    const double gmax = *std::max_element(gaps.begin(), gaps.end());
    const double gmin = *std::min_element(gaps.begin(), gaps.end());
    const double tol = 1e-9 * gmax;
    double g = gaps[0];
    for (double gi : gaps) {
      double a = std::max(g, gi), b = std::min(g, gi);
      while (b > tol) {
        const double r = std::fmod(a, b);
        a = b;
        b = r;
      }
      g = a;
    }
    horizon = (g > tol) ? 2.0 * M_PI / g : 8.0 * 2.0 * M_PI / gmin;
  }
  std::vector<double> grid(points);
  for (std::size_t j = 0; j < points; ++j)
    grid[j] = horizon * static_cast<double>(j + 1) / static_cast<double>(points);
  return grid;
}

/// Search for a K-member mutually orthogonal evolved family at equal spacing
/// { rho, rho(t), ..., rho((K-1)t) } over the grid, and check the
/// contrapositive: finding one forces S_b(E|R) >= log2 K for b in [1/2, inf].
inline SpeedLimitReport speed_limit_check(const DensityOperator& rho_ar,
                                          const SpectralHamiltonian& h, int family_size,
                                          const std::vector<double>& t_grid,
                                          const SolverOptions& opts = {}) {
  if (family_size < 2) throw Error("speed_limit_check: family size must be >= 2");
  SpeedLimitReport rep;
  rep.family_size = family_size;

  const std::vector<Index>& dims = rho_ar.subsystem_dims();
  const DensityOperator rho_a =
      dims.size() > 1 ? partial_trace(rho_ar, {0}) : rho_ar;

  const CqState omega = energy_measurement_state(rho_ar, h);
  const DensityOperator omega_er = omega.as_density();
  rep.entropy_half = conditional_renyi(omega_er, {1}, RenyiOrder(0.5), opts).value;
  rep.entropy_one = conditional_renyi(omega_er, {1}, RenyiOrder(1.0), opts).value;
  rep.entropy_inf = conditional_renyi(omega_er, {1}, RenyiOrder::infinity(), opts).value;

  const Matrix hm = h.to_matrix();
  const double e1 = (hm * rho_a.matrix()).trace().real();
  const double e2 = (hm * hm * rho_a.matrix()).trace().real();
  rep.delta_e = std::sqrt(std::max(0.0, e2 - e1 * e1));
  rep.mt_time = rep.delta_e > 0.0 ? M_PI / (2.0 * rep.delta_e) : kInf;

  for (double t : t_grid) {
    std::vector<DensityOperator> family;
    family.reserve(static_cast<std::size_t>(family_size));
    for (int k = 0; k < family_size; ++k)
      family.push_back(evolve(rho_a, h, static_cast<double>(k) * t));
    double worst = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
      for (std::size_t j = i + 1; j < family.size(); ++j)
        worst = std::max(worst, fidelity(family[i], family[j]));
    rep.min_pairwise_fidelity = std::min(rep.min_pairwise_fidelity, worst);
    if (worst < 1e-9 && !rep.orthogonalizing_time) rep.orthogonalizing_time = t;
  }

  if (rep.orthogonalizing_time) {
    const double bound = std::log2(static_cast<double>(family_size)) - 1e-6;
    rep.contrapositive_ok =
        rep.entropy_half >= bound && rep.entropy_one >= bound && rep.entropy_inf >= bound;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Min/max-entropy certification and extraction
// ---------------------------------------------------------------------------

enum class MeasuredVariable { Energy, Time };

struct MinmaxReport {
  MeasuredVariable measured = MeasuredVariable::Time;
  double s_max_measured = 0.0;   // max-entropy (order 1/2) of the measured data
  double s_min_bound = 0.0;      // certified min-entropy of the other variable
  int copies = 1;
  double total_min_entropy = 0.0;
  long long extractable_bits = 0;
};

/// Certify min-entropy of one variable from the max-entropy of the other via
/// the order-(inf, 1/2) relation pair, then apply the leftover-hash length
/// max(0, floor(total - 2 log2(1/eps))). Independent copies add.
inline MinmaxReport minmax_certify(const DensityOperator& rho_ar,
                                   const SpectralHamiltonian& h, const TimeEnsemble& times,
                                   MeasuredVariable measured, double eps, int copies = 1,
                                   const SolverOptions& opts = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error("minmax_certify: eps must lie in (0,1)");
  if (copies < 1) throw Error("minmax_certify: copies must be >= 1");
  detail::require_uniform(times, "minmax_certify");

  const std::vector<Index>& dims = rho_ar.subsystem_dims();
  const DensityOperator rho_a =
      dims.size() > 1 ? partial_trace(rho_ar, {0}) : rho_ar;

  MinmaxReport rep;
  rep.measured = measured;
  rep.copies = copies;
  const RenyiOrder half(0.5);
  if (measured == MeasuredVariable::Time) {
    const CqState kappa = clock_state(rho_a, h, times);
    rep.s_max_measured = conditional_renyi(kappa.as_density(), {1}, half, opts).value;
  } else {
    const CqState omega = energy_measurement_state(rho_ar, h);
    rep.s_max_measured = conditional_renyi(omega.as_density(), {1}, half, opts).value;
  }
  rep.s_min_bound = std::log2(static_cast<double>(times.count())) - rep.s_max_measured;
  rep.total_min_entropy = static_cast<double>(copies) * rep.s_min_bound;
  const double len = std::floor(rep.total_min_entropy - 2.0 * std::log2(1.0 / eps));
  rep.extractable_bits = len > 0.0 ? static_cast<long long>(len) : 0;
  return rep;
}

/// Toeplitz two-universal hashing over GF(2). The matrix T has
/// T(i, j) = seed[n - 1 + i - j] for an n-bit input, so the seed must hold
/// n + out_len - 1 bits; output_i = XOR_j T(i,j) & raw_j.
inline std::vector<std::uint8_t> toeplitz_extract(const std::vector<std::uint8_t>& raw,
                                                  std::size_t out_len,
                                                  const std::vector<std::uint8_t>& seed) {
  const std::size_t n = raw.size();
  if (out_len > n) throw BadLength("toeplitz_extract: output longer than input");
  if (seed.size() + 1 != n + out_len)
    throw BadLength("toeplitz_extract: seed must hold n + out_len - 1 bits");
  std::vector<std::uint8_t> out(out_len, 0);
  for (std::size_t i = 0; i < out_len; ++i) {
    std::uint8_t acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc ^= static_cast<std::uint8_t>(seed[n - 1 + i - j] & raw[j] & 1u);
    out[i] = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random audit instances (shared by campaigns and tests)
// ---------------------------------------------------------------------------

struct RandomInstance {
  DensityOperator rho_ar;
  SpectralHamiltonian h;
  TimeEnsemble times;
};

/// Pure rho_AR with d_A, d_R <= 4, a GUE-style Hamiltonian on A, and K in
/// {2,3,4} sorted random times in [0, 2 pi).
inline RandomInstance make_random_instance(CounterRng& rng) {
  const Index d_a = 2 + static_cast<Index>(rng.below(3));
  const Index d_r = 2 + static_cast<Index>(rng.below(3));
  const std::size_t k = 2 + static_cast<std::size_t>(rng.below(3));

  const Matrix hm = random_hermitian(d_a, rng);
  SpectralHamiltonian h = spectral_decompose(hm);

  DensityOperator rho_ar =
      DensityOperator::from_pure(random_pure(d_a * d_r, rng), {d_a, d_r});

  std::vector<double> ts(k);
  for (double& t : ts) t = rng.uniform(0.0, 2.0 * M_PI);
  std::sort(ts.begin(), ts.end());
  return {std::move(rho_ar), std::move(h), TimeEnsemble::discrete(std::move(ts))};
}

}  // namespace clockbound

#endif  // CLOCKBOUND_RELATIONS_HPP
