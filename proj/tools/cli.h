// Copyright 2026 The nsimplex Authors.
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

#ifndef NSIMPLEX_TOOLS_CLI_H_
#define NSIMPLEX_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace nsimplex::cli {

// Exit codes of the nsimplex tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitInvariant = 3;

// Runs the tool. `args` excludes the program name. Results go to `out`,
// diagnostics to `err`.
int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nsimplex::cli

#endif  // NSIMPLEX_TOOLS_CLI_H_
