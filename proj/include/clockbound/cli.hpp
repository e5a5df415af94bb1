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

#ifndef CLOCKBOUND_CLI_HPP
#define CLOCKBOUND_CLI_HPP

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "clockbound/csv.hpp"
#include "clockbound/game.hpp"
#include "clockbound/relations.hpp"
#include "clockbound/scenario.hpp"

namespace clockbound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitViolation = 2;

inline unsigned worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("CLOCKBOUND_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(jobs, 1)));
}

/// Runs fn(i) for i in [0, jobs) across workers; each index writes only its
/// own output slot, so the result order is independent of scheduling.
template <class Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
  const unsigned workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < jobs; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {

inline void emit(const CsvWriter& csv, const std::optional<std::string>& out,
                 std::ostream& stdout_stream) {
  if (out)
    csv.write_file(*out);
  else
    stdout_stream << csv.str();
}

inline std::vector<std::string> audit_row(const std::string& instance, const AuditReport& r) {
  const AuditTerm& t0 = r.lhs_terms[0];
  const AuditTerm& t1 = r.lhs_terms[1];
  return {instance,
          to_string(r.relation),
          CsvWriter::num(r.alpha),
          CsvWriter::num(r.beta),
          CsvWriter::num(t0.value),
          CsvWriter::num(t1.value),
          CsvWriter::num(r.lhs_total()),
          CsvWriter::num(r.rhs),
          CsvWriter::num(r.slack()),
          CsvWriter::num(t0.residual),
          CsvWriter::num(t1.residual),
          r.all_converged() ? "1" : "0",
          std::isnan(r.extra) ? "" : CsvWriter::num(r.extra)};
}

inline const std::vector<std::string>& audit_header() {
  static const std::vector<std::string> cols = {
      "instance",    "relation",  "alpha",         "beta",
      "time_term",   "energy_term", "lhs_total",   "rhs",
      "slack",       "time_residual", "energy_residual", "converged",
      "extra"};
  return cols;
}

inline std::vector<RenyiOrder> parse_alpha_list(const std::string& list) {
  std::vector<RenyiOrder> grid;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "inf")
      grid.push_back(RenyiOrder::infinity());
    else
      grid.emplace_back(std::stod(item));
  }
  if (grid.empty()) throw Error("--alpha: empty list");
  return grid;
}

inline std::vector<double> parse_real_list(const std::string& list) {
  std::vector<double> vals;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) vals.push_back(std::stod(item));
  }
  if (vals.empty()) throw Error("--values: empty list");
  return vals;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// audit: relation campaign over a scenario or random instances
// ---------------------------------------------------------------------------

inline int cmd_audit(const std::string& scenario_path, int random_count, std::uint64_t seed,
                     double tol, const std::string& alpha_list,
                     const std::optional<std::string>& out, std::ostream& os,
                     std::ostream& err) {
  CsvWriter csv;
  csv.header(detail::audit_header());
  bool violation = false;

  auto push = [&](const std::string& instance, const AuditReport& r) {
    csv.row(detail::audit_row(instance, r));
    if (r.slack() < -tol) violation = true;
  };

  if (random_count > 0) {
    std::vector<RenyiOrder> grid =
        alpha_list.empty()
            ? std::vector<RenyiOrder>{RenyiOrder(0.5),  RenyiOrder(0.7),
                                      RenyiOrder(1.0),  RenyiOrder(2.0),
                                      RenyiOrder(10.0), RenyiOrder::infinity()}
            : detail::parse_alpha_list(alpha_list);
    const std::size_t jobs = static_cast<std::size_t>(random_count);
    std::vector<std::vector<AuditReport>> reports(jobs);
    parallel_for(jobs, [&](std::size_t i) {
      CounterRng rng(seed, i);
      const RandomInstance inst = make_random_instance(rng);
      for (const RenyiOrder& a : grid)
        reports[i].push_back(audit_main(inst.rho_ar, inst.h, inst.times, a));
    });
    for (std::size_t i = 0; i < jobs; ++i)
      for (const AuditReport& r : reports[i]) push("random-" + std::to_string(i), r);
    detail::emit(csv, out, os);
    return violation ? kExitViolation : kExitOk;
  }

  Scenario sc = load_scenario(scenario_path);
  if (!alpha_list.empty()) sc.alpha_grid = detail::parse_alpha_list(alpha_list);
  const std::optional<std::string> target = out ? out : sc.out_csv;
  const std::string name = "scenario";

  if (sc.time.kind == TimeEnsemble::Kind::Continuous) {
    push(name, audit_continuous(sc.rho_a, sc.h, sc.time.t_final));
    detail::emit(csv, target, os);
    return violation ? kExitViolation : kExitOk;
  }

  if (sc.time.has_duplicate_times())
    err << "warning: time.grid contains duplicate entries\n";

  const bool uniform = sc.time.uniform_weights();
  if (uniform) {
    for (const RenyiOrder& a : sc.alpha_grid) {
      if (a.value() >= 0.5) push(name, audit_main(sc.joint_or_local(), sc.h, sc.time, a));
      push(name, audit_asymmetry(sc.rho_a, sc.h, sc.time, a));
      if (!sc.rho_ar && sc.rho_a.is_pure() && a.value() >= 0.5)
        push(name, audit_pure(sc.rho_a, sc.h, sc.time, a));
    }
    AuditReport vn = audit_main(sc.joint_or_local(), sc.h, sc.time, RenyiOrder(1.0));
    vn.relation = RelationId::VonNeumann;
    push(name, vn);
    if (sc.rho_ar && sc.rho_ar->subsystem_dims().size() == 3)
      for (const RenyiOrder& a : sc.alpha_grid)
        if (a.value() >= 0.5) push(name, audit_split(*sc.rho_ar, sc.h, sc.time, a));
  }
  if (sc.joint_or_local().is_pure())
    push(name, audit_nonuniform(sc.joint_or_local(), sc.h, sc.time));

  detail::emit(csv, target, os);
  return violation ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// figure2: spin-1/2 uncertainty curves against the Bloch angle
// ---------------------------------------------------------------------------

inline int cmd_figure2(int theta_count, double kappa, double t_final, std::size_t n_times,
                       const std::optional<std::string>& out, std::ostream& os) {
  Matrix sz(2, 2);
  sz << 1, 0, 0, -1;
  const SpectralHamiltonian h = spectral_decompose(kappa * sz);
  const TimeEnsemble times = TimeEnsemble::equally_spaced(n_times, t_final);
  const double bound = std::log2(static_cast<double>(n_times));

  CsvWriter csv;
  csv.header({"theta", "energy_uncertainty", "time_uncertainty_discrete",
              "time_uncertainty_continuous", "total_discrete", "total_continuous", "bound"});

  std::vector<std::array<double, 3>> rows(static_cast<std::size_t>(theta_count));
  parallel_for(rows.size(), [&](std::size_t i) {
    const double theta =
        M_PI * static_cast<double>(i) / static_cast<double>(theta_count - 1);
    Vector v(2);
    v << std::cos(theta / 2.0), std::sin(theta / 2.0);
    const DensityOperator rho = DensityOperator::from_pure(v);

    const double gamma = relative_entropy_of_asymmetry(rho, h).value;
    const CqState kc = clock_state(rho, h, times);
    const double s_disc = conditional_renyi(kc.as_density(), {1}, RenyiOrder(1.0)).value;
    const DensityOperator avg = time_averaged_state(rho, h, t_final);
    const double s_cont = differential_conditional_entropy(
        [&](double t) { return evolve(rho.matrix(), h, t); }, t_final, avg.matrix());
    rows[i] = {gamma, s_disc, s_cont};
  });

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double theta =
        M_PI * static_cast<double>(i) / static_cast<double>(theta_count - 1);
    const auto& [gamma, s_disc, s_cont] = rows[i];
    csv.row({CsvWriter::num(theta), CsvWriter::num(gamma), CsvWriter::num(s_disc),
             CsvWriter::num(s_cont), CsvWriter::num(gamma + s_disc),
             CsvWriter::num(gamma + s_cont), CsvWriter::num(bound)});
  }
  detail::emit(csv, out, os);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// game: Monte Carlo guessing game
// ---------------------------------------------------------------------------

inline int cmd_game(const std::string& scenario_path, long long trials, std::uint64_t seed,
                    const std::string& variant, const std::string& strategy,
                    const std::optional<std::string>& out, std::ostream& os) {
  const Scenario sc = load_scenario(scenario_path);
  if (sc.time.kind != TimeEnsemble::Kind::Discrete)
    throw ScenarioError("time", "the game needs a discrete time ensemble");

  GameConfig config{sc.joint_or_local(), sc.h, sc.time, trials, seed,
                    GameVariant::CoinFirst, GameStrategy::Helstrom, {}};
  if (variant == "coin-first")
    config.variant = GameVariant::CoinFirst;
  else if (variant == "evolve-first")
    config.variant = GameVariant::EvolveFirst;
  else
    throw Error("--variant: expected coin-first or evolve-first");
  if (strategy == "helstrom")
    config.strategy = GameStrategy::Helstrom;
  else if (strategy == "pgm")
    config.strategy = GameStrategy::PrettyGood;
  else
    throw Error("--strategy: expected helstrom or pgm");

  const GameResult r = simulate_game(config);

  const CqState kappa = clock_state(
      sc.rho_ar ? partial_trace(*sc.rho_ar, {0}) : sc.rho_a, sc.h, sc.time);
  const EntropyResult s_inf =
      conditional_renyi(kappa.as_density(), {1}, RenyiOrder::infinity());
  const double optimal_guess = std::exp2(-s_inf.value);

  CsvWriter csv;
  csv.header({"variant", "strategy", "trials", "seed", "time_branch_wins",
              "time_branch_trials", "energy_branch_wins", "energy_branch_trials",
              "empirical_p_win", "predicted_p_win", "std_error", "optimal_time_guess_p"});
  csv.row({variant, strategy, CsvWriter::num(static_cast<long long>(trials)),
           CsvWriter::num(static_cast<long long>(seed)), CsvWriter::num(r.time_branch_wins),
           CsvWriter::num(r.time_branch_trials), CsvWriter::num(r.energy_branch_wins),
           CsvWriter::num(r.energy_branch_trials), CsvWriter::num(r.empirical_p_win),
           CsvWriter::num(r.predicted_p_win), CsvWriter::num(r.std_error),
           CsvWriter::num(optimal_guess)});
  detail::emit(csv, out ? out : sc.out_csv, os);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// truncation: cutoff convergence on a ladder Hamiltonian
// ---------------------------------------------------------------------------

inline int cmd_truncation(int levels, double decay, const std::vector<double>& cutoffs,
                          std::size_t n_times, double horizon,
                          const std::optional<std::string>& out, std::ostream& os) {
  if (levels < 2) throw Error("--levels: need at least 2");
  if (!(decay > 0.0 && decay < 1.0)) throw Error("--decay: need a value in (0,1)");
  Matrix ladder = Matrix::Zero(levels, levels);
  for (Index i = 0; i < levels; ++i) ladder(i, i) = static_cast<double>(i);
  const SpectralHamiltonian h = spectral_decompose(ladder);
  Vector amp(levels);
  for (Index i = 0; i < levels; ++i) amp(i) = std::pow(decay, static_cast<double>(i) / 2.0);
  const DensityOperator rho = DensityOperator::from_pure(amp);
  const TimeEnsemble times = TimeEnsemble::equally_spaced(n_times, horizon);

  CsvWriter csv;
  csv.header({"cutoff", "tail_weight", "trace_distance", "slack"});
  for (double cut : cutoffs) {
    const TruncationResult tr = truncate(h, rho, cut);
    const AuditReport rep = audit_main(tr.state, tr.hamiltonian, times, RenyiOrder(1.0));
    csv.row({CsvWriter::num(cut), CsvWriter::num(tr.tail_weight),
             CsvWriter::num(tr.distance_to_original), CsvWriter::num(rep.slack())});
  }
  detail::emit(csv, out, os);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// scan: one-parameter sweeps
// ---------------------------------------------------------------------------

inline int cmd_scan(const std::string& scenario_path, const std::string& param,
                    const std::string& values, const std::optional<std::string>& out,
                    std::ostream& os) {
  const Scenario sc = load_scenario(scenario_path);
  CsvWriter csv;
  csv.header({"param", "value", "relation", "alpha", "time_term", "energy_term", "lhs_total",
              "rhs", "slack"});
  auto push = [&](const std::string& p, double v, const AuditReport& r) {
    csv.row({p, CsvWriter::num(v), to_string(r.relation), CsvWriter::num(r.alpha),
             CsvWriter::num(r.lhs_terms[0].value), CsvWriter::num(r.lhs_terms[1].value),
             CsvWriter::num(r.lhs_total()), CsvWriter::num(r.rhs), CsvWriter::num(r.slack())});
  };

  if (param == "alpha") {
    if (sc.time.kind != TimeEnsemble::Kind::Discrete)
      throw ScenarioError("time", "alpha scan needs discrete times");
    for (const RenyiOrder& a : detail::parse_alpha_list(values))
      push("alpha", a.value(), audit_main(sc.joint_or_local(), sc.h, sc.time, a));
  } else if (param == "theta") {
    if (sc.h.dim() != 2) throw ScenarioError("hamiltonian", "theta scan needs a qubit");
    for (double theta : detail::parse_real_list(values)) {
      Vector v(2);
      v << std::cos(theta / 2.0), std::sin(theta / 2.0);
      const DensityOperator rho = DensityOperator::from_pure(v);
      if (sc.time.kind == TimeEnsemble::Kind::Discrete)
        push("theta", theta, audit_main(rho, sc.h, sc.time, RenyiOrder(1.0)));
      else
        push("theta", theta, audit_continuous(rho, sc.h, sc.time.t_final));
    }
  } else if (param == "tf") {
    for (double tf : detail::parse_real_list(values))
      push("tf", tf, audit_continuous(sc.rho_a, sc.h, tf));
  } else {
    throw Error("--param: expected alpha, theta, or tf");
  }
  detail::emit(csv, out ? out : sc.out_csv, os);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// front end
// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& os = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Entropic energy-time uncertainty toolkit"};
  app.require_subcommand(1);

  std::string scenario_path, alpha_list, variant = "coin-first", strategy = "helstrom";
  std::string scan_param = "alpha", scan_values;
  std::optional<std::string> out;
  std::uint64_t seed = 1;
  double tol = kSlackTol;
  int random_count = 0;
  long long trials = 100000;
  int theta_count = 181;
  double fig_kappa = 1.0, fig_tf = 2.0;
  std::size_t fig_times = 2, trunc_times = 2;
  int levels = 10;
  double decay = 0.6, trunc_horizon = 1.0;
  std::string cutoff_list = "2,4,6,8";

  CLI::App* audit = app.add_subcommand("audit", "Audit the uncertainty relations");
  audit->add_option("scenario", scenario_path, "Scenario file (JSON)");
  audit->add_option("--random", random_count, "Audit N random instances instead");
  audit->add_option("--seed", seed, "Campaign seed");
  audit->add_option("--tol", tol, "Slack tolerance");
  audit->add_option("--alpha", alpha_list, "Comma-separated entropic orders (inf allowed)");
  audit->add_option("--out", out, "Output CSV path");

  CLI::App* fig = app.add_subcommand("figure2", "Spin-1/2 uncertainty curves");
  fig->add_option("--theta-count", theta_count, "Number of theta samples");
  fig->add_option("--kappa", fig_kappa, "Hamiltonian scale");
  fig->add_option("--tf", fig_tf, "Continuous-time horizon");
  fig->add_option("--times", fig_times, "Discrete time count");
  fig->add_option("--out", out, "Output CSV path");

  CLI::App* game = app.add_subcommand("game", "Monte Carlo guessing game");
  game->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  game->add_option("--trials", trials, "Trial count");
  game->add_option("--seed", seed, "RNG seed");
  game->add_option("--variant", variant, "coin-first | evolve-first");
  game->add_option("--strategy", strategy, "helstrom | pgm");
  game->add_option("--out", out, "Output CSV path");

  CLI::App* trunc = app.add_subcommand("truncation", "Cutoff convergence on a ladder");
  trunc->add_option("--levels", levels, "Ladder size");
  trunc->add_option("--decay", decay, "Geometric tail decay in (0,1)");
  trunc->add_option("--cutoffs", cutoff_list, "Comma-separated cutoffs");
  trunc->add_option("--times", trunc_times, "Discrete time count for the audit");
  trunc->add_option("--horizon", trunc_horizon, "Time grid horizon for the audit");
  trunc->add_option("--out", out, "Output CSV path");

  CLI::App* scan = app.add_subcommand("scan", "One-parameter sweeps");
  scan->add_option("scenario", scenario_path, "Scenario file (JSON)")->required();
  scan->add_option("--param", scan_param, "alpha | theta | tf");
  scan->add_option("--values", scan_values, "Comma-separated sweep values")->required();
  scan->add_option("--out", out, "Output CSV path");

  std::vector<const char*> argv;
  argv.push_back("clockbound");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      os << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  try {
    if (audit->parsed()) {
      if (random_count <= 0 && scenario_path.empty())
        throw Error("audit: need a scenario file or --random N");
      return cmd_audit(scenario_path, random_count, seed, tol, alpha_list, out, os, err);
    }
    if (fig->parsed()) {
      if (theta_count < 2) throw Error("--theta-count: need at least 2");
      return cmd_figure2(theta_count, fig_kappa, fig_tf, fig_times, out, os);
    }
    if (game->parsed()) return cmd_game(scenario_path, trials, seed, variant, strategy, out, os);
    if (trunc->parsed())
      return cmd_truncation(levels, decay, detail::parse_real_list(cutoff_list), trunc_times,
                            trunc_horizon, out, os);
    if (scan->parsed()) return cmd_scan(scenario_path, scan_param, scan_values, out, os);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace clockbound::cli

#endif  // CLOCKBOUND_CLI_HPP
