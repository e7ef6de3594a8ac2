// Copyright 2026 The coordcert Authors
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

#ifndef COORDCERT_CLI_H
#define COORDCERT_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace coordcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitSolver = 3;

/// Runs the command line. `args` excludes the program name. Reports go to
/// `out` and, when an output directory is set by --out or COORDCERT_OUT,
/// also to files there. Returns 0 on success, 2 on invalid input and 3 when
/// a solver fails to converge,
/// and 1 on any other error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace coordcert

#endif
