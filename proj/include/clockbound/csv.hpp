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

#ifndef CLOCKBOUND_CSV_HPP
#define CLOCKBOUND_CSV_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "clockbound/errors.hpp"

namespace clockbound {

inline constexpr const char* kCsvSchema = "clockbound-v1";

/// Byte-stable CSV: '.' decimal separator, 12 significant digits, and a fixed
/// schema comment on the first line. Rows accumulate in memory so outputs are
/// emitted in deterministic order regardless of how they were produced.
class CsvWriter {
 public:
  CsvWriter() { buf_ << "# schema=" << kCsvSchema << "\n"; }

  static std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char tmp[64];
    std::snprintf(tmp, sizeof(tmp), "%.12g", v);
    return tmp;
  }

  static std::string num(long long v) { return std::to_string(v); }

  void header(const std::vector<std::string>& cols) { line(cols); }
  void row(const std::vector<std::string>& cells) { line(cells); }

  std::string str() const { return buf_.str(); }

  void write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("CsvWriter: cannot open output file " + path);
    const std::string s = str();
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
  }

 private:
  void line(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) buf_ << ',';
      buf_ << cells[i];
    }
    buf_ << '\n';
  }

  std::ostringstream buf_;
};

}  // namespace clockbound

#endif  // CLOCKBOUND_CSV_HPP
