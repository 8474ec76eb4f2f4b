// Copyright 2026 The chshq Authors
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

// Command-line front end. run() is the whole program minus process plumbing,
// so tests can drive it with in-memory streams.
//
// Exit codes: 0 feasible or passing, 1 infeasible or violations found,
// 2 usage error.

#ifndef CHSHQ_CLI_H
#define CHSHQ_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace chshq::cli {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

/// args excludes the program name. The environment variable CHSHQ_THREADS,
/// when set, is the default for --threads.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Shortest decimal string that parses back to exactly x; "inf", "-inf" or
/// "nan" for non-finite values.
std::string format_double(double x);

}  // namespace chshq::cli

#endif  // CHSHQ_CLI_H
