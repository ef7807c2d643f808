// Copyright 2026 The permkit Authors
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

#ifndef PERMKIT_TOOLS_CLI_HPP
#define PERMKIT_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace permkit::cli {

inline constexpr const char *kToolVersion = "0.1.0";

/// Runs one command line (without the program name). JSON results go to
/// `out` only when the command succeeds; diagnostics and the run manifest go
/// to `err` (or to the --manifest file). Returns 0 on success, 2 when an
/// identity check fails, 1 on bad input.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace permkit::cli

#endif
