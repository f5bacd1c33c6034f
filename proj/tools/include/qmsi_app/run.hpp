// Copyright 2026 The qmsi Authors.
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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qmsi::app {

inline constexpr const char* kCommands[] = {"validate", "gap", "constants", "decay", "expand", "kt", "search"};

struct RunRequest {
  std::string command;
  std::string spec_text;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<std::vector<double>> q_grid;
  std::optional<double> tolerance;
  bool timing = false;
};

struct RunResult {
  int exit_code = 0;   // 0 ok, 1 spec or domain failure, 2 numerical failure
  std::string report;  // JSON, always present
  std::string diagnostics;
  std::optional<std::string> csv;  // decay only
};

RunResult run(const RunRequest& request);

/// Parses "1.1,1.5,2" into numbers; throws SpecError naming "--q-grid".
std::vector<double> parse_q_list(const std::string& text);

}  // namespace qmsi::app
