// Copyright 2026 powdiv authors.
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

#include <string>
#include <vector>

#include "powdiv/io.hpp"

namespace powdiv {

// Exit codes are a stable contract:
//   0 success, 1 verification failure, 2 usage/config error,
//   3 computational precondition failure.
struct CommandResult {
  int exit_code = 0;
  std::string human;                  // goes to stdout
  std::string report_json;            // also written to output.path when set
  std::vector<std::string> warnings;  // go to stderr
};

CommandResult cmd_bound(const ConfigDoc& config);
CommandResult cmd_table1(const ConfigDoc& config);
CommandResult cmd_verify(const ConfigDoc& config);
CommandResult cmd_sweep(const ConfigDoc& config);

// Runs `command` with the given config, translating thrown errors into the
// exit-code contract above.
CommandResult run_command(const std::string& command, const ConfigDoc& config);

}  // namespace powdiv
