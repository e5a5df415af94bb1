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

#ifndef CLOCKBOUND_SCENARIO_HPP
#define CLOCKBOUND_SCENARIO_HPP

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "clockbound/clock_states.hpp"
#include "clockbound/random_states.hpp"
#include "clockbound/renyi.hpp"
#include "clockbound/spectral.hpp"

namespace clockbound {

/// Fully validated problem instance parsed from a scenario file. Complex
/// entries are written as two-element [re, im] arrays; plain numbers are
/// accepted as reals. Parsing validates every module precondition up front
/// and reports the offending key path on failure.
struct Scenario {
  SpectralHamiltonian h;
  DensityOperator rho_a;
  std::optional<DensityOperator> rho_ar;  // joint clock+memory state
  TimeEnsemble time;
  std::vector<RenyiOrder> alpha_grid;
  std::optional<std::string> out_csv;

  const DensityOperator& joint_or_local() const { return rho_ar ? *rho_ar : rho_a; }
};

namespace scenario_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& key, const std::string& what) {
  throw ScenarioError(key, what);
}

inline const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path + key, "missing");
  return j.at(key);
}

inline double as_real(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

inline Cplx as_complex(const json& j, const std::string& path) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Cplx(j[0].get<double>(), j[1].get<double>());
  fail(path, "expected a number or a two-element [re, im] array");
}

inline Vector as_vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = as_complex(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

inline Matrix as_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != n) fail(rp, "expected a square matrix row");
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<Index>(r), static_cast<Index>(c)) =
          as_complex(j[r][c], rp + "[" + std::to_string(c) + "]");
  }
  return m;
}

inline SpectralHamiltonian parse_hamiltonian(const json& j) {
  const std::string path = "hamiltonian.";
  if (!j.is_object()) fail("hamiltonian", "expected an object");
  const double tol = j.contains("grouping_tol") ? as_real(j["grouping_tol"], path + "grouping_tol") : 0.0;
  try {
    if (j.contains("preset")) {
      const std::string name = j["preset"].get<std::string>();
      const double scale = j.contains("scale") ? as_real(j["scale"], path + "scale") : 1.0;
      Matrix m(2, 2);
      if (name == "pauli-z")
        m << 1, 0, 0, -1;
      else if (name == "pauli-x")
        m << 0, 1, 1, 0;
      else if (name == "pauli-y")
        m << 0, Cplx(0, -1), Cplx(0, 1), 0;
      else
        fail(path + "preset", "unknown preset '" + name + "'");
      return spectral_decompose(scale * m, tol);
    }
    if (j.contains("diagonal")) {
      const json& d = j["diagonal"];
      if (!d.is_array() || d.empty()) fail(path + "diagonal", "expected a non-empty array");
      Matrix m = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
      for (std::size_t i = 0; i < d.size(); ++i)
        m(static_cast<Index>(i), static_cast<Index>(i)) =
            as_real(d[i], path + "diagonal[" + std::to_string(i) + "]");
      return spectral_decompose(m, tol);
    }
    if (j.contains("matrix"))
      return spectral_decompose(as_matrix(j["matrix"], path + "matrix"), tol);
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail("hamiltonian", e.what());
  }
  fail("hamiltonian", "need one of preset | diagonal | matrix");
}

inline DensityOperator parse_state(const json& j, const SpectralHamiltonian& h) {
  const std::string path = "state.";
  if (!j.is_object()) fail("state", "expected an object");
  try {
    if (j.contains("bloch")) {
      const json& b = j["bloch"];
      if (!b.is_array() || b.size() < 1 || b.size() > 2)
        fail(path + "bloch", "expected [theta] or [theta, phi]");
      if (h.dim() != 2) fail(path + "bloch", "Bloch angles need a two-level Hamiltonian");
      const double theta = as_real(b[0], path + "bloch[0]");
      const double phi = b.size() == 2 ? as_real(b[1], path + "bloch[1]") : 0.0;
      Vector v(2);
      v << std::cos(theta / 2.0), std::exp(Cplx(0.0, phi)) * std::sin(theta / 2.0);
      return DensityOperator::from_pure(v);
    }
    if (j.contains("amplitudes")) {
      const Vector v = as_vector(j["amplitudes"], path + "amplitudes");
      if (v.size() != h.dim()) fail(path + "amplitudes", "dimension differs from the Hamiltonian");
      return DensityOperator::from_pure(v);
    }
    if (j.contains("density")) {
      const Matrix m = as_matrix(j["density"], path + "density");
      if (m.rows() != h.dim()) fail(path + "density", "dimension differs from the Hamiltonian");
      return DensityOperator(m);
    }
    if (j.contains("random")) {
      const json& r = j["random"];
      const auto seed = static_cast<std::uint64_t>(
          need(r, "seed", path + "random.").get<std::int64_t>());
      const Index rank = r.contains("rank")
                             ? static_cast<Index>(as_real(r["rank"], path + "random.rank"))
                             : h.dim();
      if (rank < 1 || rank > h.dim()) fail(path + "random.rank", "rank outside [1, dim]");
      CounterRng rng(seed, 0xa11ce);
      return random_density(h.dim(), rank, rng);
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail("state", e.what());
  }
  fail("state", "need one of bloch | amplitudes | density | random");
}

inline std::optional<DensityOperator> parse_memory(const json& root, const DensityOperator& rho_a,
                                                   const SpectralHamiltonian& h) {
  if (!root.contains("memory")) return std::nullopt;
  const json& j = root["memory"];
  const std::string path = "memory.";
  try {
    if (j.is_string()) {
      if (j.get<std::string>() == "purify") return purify(rho_a);
      fail("memory", "unknown directive '" + j.get<std::string>() + "'");
    }
    if (!j.is_object()) fail("memory", "expected 'purify' or an object");
    std::vector<Index> dims;
    if (j.contains("dims")) {
      for (std::size_t i = 0; i < j["dims"].size(); ++i)
        dims.push_back(static_cast<Index>(as_real(j["dims"][i], path + "dims")));
    }
    if (dims.empty() || dims[0] != h.dim())
      fail(path + "dims", "first factor must match the Hamiltonian dimension");
    if (j.contains("joint_amplitudes"))
      return DensityOperator::from_pure(as_vector(j["joint_amplitudes"], path + "joint_amplitudes"),
                                        dims);
    if (j.contains("joint_density"))
      return DensityOperator(as_matrix(j["joint_density"], path + "joint_density"), dims);
    fail("memory", "need 'purify' or joint_amplitudes | joint_density with dims");
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail("memory", e.what());
  }
}

inline TimeEnsemble parse_time(const json& root) {
  const json& j = need(root, "time", "");
  const std::string path = "time.";
  try {
    if (j.contains("grid")) {
      std::vector<double> ts;
      for (std::size_t i = 0; i < j["grid"].size(); ++i)
        ts.push_back(as_real(j["grid"][i], path + "grid[" + std::to_string(i) + "]"));
      std::vector<double> ws;
      if (root.contains("weights"))
        for (std::size_t i = 0; i < root["weights"].size(); ++i)
          ws.push_back(as_real(root["weights"][i], "weights[" + std::to_string(i) + "]"));
      return TimeEnsemble::discrete(std::move(ts), std::move(ws));
    }
    if (j.contains("continuous") && j["continuous"].get<bool>())
      return TimeEnsemble::continuous(as_real(need(j, "horizon", path), path + "horizon"));
    if (j.contains("count")) {
      const auto count = static_cast<std::size_t>(as_real(j["count"], path + "count"));
      const double horizon = as_real(need(j, "horizon", path), path + "horizon");
      if (j.contains("spacing") && j["spacing"].get<std::string>() != "equal")
        fail(path + "spacing", "only 'equal' spacing is supported");
      return TimeEnsemble::equally_spaced(count, horizon);
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail("time", e.what());
  }
  fail("time", "need one of grid | {count, horizon} | {continuous, horizon}");
}

inline std::vector<RenyiOrder> parse_alpha_grid(const json& root) {
  std::vector<RenyiOrder> grid;
  if (!root.contains("alpha_grid")) {
    for (double a : {0.5, 1.0, 2.0}) grid.emplace_back(a);
    grid.push_back(RenyiOrder::infinity());
    return grid;
  }
  const json& j = root["alpha_grid"];
  if (!j.is_array() || j.empty()) fail("alpha_grid", "expected a non-empty array");
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "alpha_grid[" + std::to_string(i) + "]";
    try {
      if (j[i].is_string()) {
        if (j[i].get<std::string>() != "inf") fail(path, "expected a number or 'inf'");
        grid.push_back(RenyiOrder::infinity());
      } else {
        grid.emplace_back(as_real(j[i], path));
      }
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  return grid;
}

}  // namespace scenario_detail

inline Scenario parse_scenario(const nlohmann::json& root) {
  using namespace scenario_detail;
  if (!root.is_object()) fail("<root>", "expected a JSON object");
  SpectralHamiltonian h = parse_hamiltonian(need(root, "hamiltonian", ""));
  DensityOperator rho_a = parse_state(need(root, "state", ""), h);
  std::optional<DensityOperator> rho_ar = parse_memory(root, rho_a, h);
  TimeEnsemble time = parse_time(root);
  std::vector<RenyiOrder> grid = parse_alpha_grid(root);
  std::optional<std::string> out;
  if (root.contains("outputs") && root["outputs"].contains("csv"))
    out = root["outputs"]["csv"].get<std::string>();
  return {std::move(h), std::move(rho_a), std::move(rho_ar), std::move(time),
          std::move(grid), std::move(out)};
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("<file>", "cannot open " + path);
  nlohmann::json root;
  try {
    in >> root;
  } catch (const std::exception& e) {
    throw ScenarioError("<file>", std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(root);
}

}  // namespace clockbound

#endif  // CLOCKBOUND_SCENARIO_HPP
