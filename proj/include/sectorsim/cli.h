// Copyright 2026 The Sectorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sectorsim {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

/**
 * Runs one subcommand. args excludes the program name. Results go to out (or
 * the --out file); failures are reported on err as {"code", "message",
 * "context"} JSON.
 */
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace sectorsim
