// Copyright 2026 The dluce Authors
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

#ifndef DLUCE_CLI_COMMANDS_HPP_
#define DLUCE_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace dluce::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // bad flags, unreadable or malformed input
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitDisconnected = 3;  // only with --strict

// Runs `dluce <subcommand> ...`. args[0] is the program name. Normal output
// goes to `out`, diagnostics to `err`; files named by --out are written
// directly.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace dluce::cli

#endif  // DLUCE_CLI_COMMANDS_HPP_
