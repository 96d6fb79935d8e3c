// Copyright 2026 The mbloch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MBLOCH_IO_HPP
#define MBLOCH_IO_HPP

// Trajectory CSV: header `t,x1,y1,x2,y2,z,H,I,C`, one row per sample,
// shortest round-trip decimal for every value.

#include <array>
#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "mbloch/core.hpp"
#include "mbloch/errors.hpp"

namespace mbloch::io {

inline constexpr std::string_view csv_header = "t,x1,y1,x2,y2,z,H,I,C";

inline std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    throw domain_error("parse_double: malformed number '" + std::string(s) + "'");
  }
  return v;
}

/// One CSV row; also used for closed-form orbit tables.
inline void write_row(std::ostream& os, double t, const State5& p) {
  const ConservedTriple k = conserved(p);
  const std::array<double, 9> row{t, p.x1, p.y1, p.x2, p.y2, p.z, k.H, k.I, k.C};
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i != 0) os << ',';
    os << format_double(row[i]);
  }
  os << '\n';
}

inline void write_csv(std::ostream& os, const Trajectory& traj) {
  os << csv_header << '\n';
  for (std::size_t i = 0; i < traj.size(); ++i) write_row(os, traj.times()[i], traj.states()[i]);
}

struct CsvRow {
  double t = 0.0;
  State5 state;
  ConservedTriple conserved;
};

inline std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header) {
    throw domain_error("read_csv: missing or unexpected header");
  }
  std::vector<CsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<double, 9> v{};
    std::size_t field = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (field >= v.size()) throw domain_error("read_csv: too many fields");
        v[field++] = parse_double(std::string_view(line).substr(start, i - start));
        start = i + 1;
      }
    }
    if (field != v.size()) throw domain_error("read_csv: too few fields");
    rows.push_back({v[0], {v[1], v[2], v[3], v[4], v[5]}, {v[6], v[7], v[8]}});
  }
  return rows;
}

} // namespace mbloch::io

#endif // MBLOCH_IO_HPP
