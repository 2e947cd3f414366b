// Copyright 2026 The qnet Authors
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
#include <vector>

namespace qnet {

// Full-precision numeric formatting for CSV interchange (17 significant digits).
inline std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void csv_row(std::ostream& os, const std::vector<double>& values) {
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << csv_num(values[i]);
  }
  os << '\n';
}

}  // namespace qnet
