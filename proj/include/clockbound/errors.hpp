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

#ifndef CLOCKBOUND_ERRORS_HPP
#define CLOCKBOUND_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace clockbound {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimMismatch : Error {
  using Error::Error;
};

struct NotHermitian : Error {
  using Error::Error;
};

struct NotPSD : Error {
  using Error::Error;
};

// Trace or positivity of a density operator out of tolerance.
struct NotAState : Error {
  using Error::Error;
};

struct BadSubsystemSpec : Error {
  using Error::Error;
};

struct NotADistribution : Error {
  using Error::Error;
};

struct NotPure : Error {
  using Error::Error;
};

struct NotProjective : Error {
  using Error::Error;
};

struct QuadratureNotConverged : Error {
  using Error::Error;
};

struct EmptyTruncation : Error {
  using Error::Error;
};

struct FillerOutsideSubspace : Error {
  using Error::Error;
};

struct InvalidStrategy : Error {
  using Error::Error;
};

struct BadLength : Error {
  using Error::Error;
};

// Scenario file problems; carries the offending key path.
struct ScenarioError : Error {
  explicit ScenarioError(const std::string& key_path, const std::string& what)
      : Error("scenario key '" + key_path + "': " + what), key(key_path) {}
  std::string key;
};

}  // namespace clockbound

#endif  // CLOCKBOUND_ERRORS_HPP
