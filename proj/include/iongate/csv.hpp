// Copyright 2026 The ion-gate-sim Authors
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

#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <type_traits>

namespace iongate {

// Numbers in every CSV/JSON artifact carry 12 significant digits.
inline std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline void write_csv_row(std::ostream&) {}

template <typename T, typename... Rest>
void write_csv_row(std::ostream& out, const T& first, const Rest&... rest) {
  if constexpr (std::is_arithmetic_v<T> && !std::is_same_v<T, bool>) {
    if constexpr (std::is_floating_point_v<T>) {
      out << format_number(first);
    } else {
      out << first;
    }
  } else {
    out << first;
  }
  if constexpr (sizeof...(rest) > 0) {
    out << ',';
    write_csv_row(out, rest...);
  } else {
    out << '\n';
  }
}

}  // namespace iongate
