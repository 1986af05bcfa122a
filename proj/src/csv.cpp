// Copyright 2026 The cadwm Authors
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

#include "cadwm/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace cadwm {

std::string format_csv_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 12);
  return std::string(buf.data(), res.ptr);
}

std::string format_text_number(double v) {
  if (v == 0.0) v = 0.0;
  std::array<char, 64> buf{};
  const int n = std::snprintf(buf.data(), buf.size(), "%#.12g", v);
  return std::string(buf.data(), static_cast<std::size_t>(n));
}

void write_csv(std::ostream& os, const SweepTable& table) {
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) os << ',';
    os << table.header[i];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_csv_number(row[i]);
    }
    os << '\n';
  }
}

}  // namespace cadwm
