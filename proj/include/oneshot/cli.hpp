// Copyright 2026 The oneshot Authors
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

#ifndef ONESHOT_CLI_HPP_
#define ONESHOT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace oneshot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitCheckFailed = 3;
inline constexpr int kExitNumerical = 4;

// Runs one command. `args` excludes the program name. Reports go to `out`,
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a of the concatenated file contents, as 16 hex digits.
std::string digest_files(const std::vector<std::string>& paths);

}  // namespace oneshot::cli

#endif  // ONESHOT_CLI_HPP_
