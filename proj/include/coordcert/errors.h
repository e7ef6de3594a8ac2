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

#ifndef COORDCERT_ERRORS_H
#define COORDCERT_ERRORS_H

#include <stdexcept>
#include <string>

namespace coordcert {

/// Raised when an input (circuit, realization, behavior, config) breaks one of
/// its invariants. The message names the offending node or field.
class ValidationError : public std::invalid_argument {
   public:
    explicit ValidationError(const std::string &what) : std::invalid_argument(what) {
    }
};

/// Raised when a numerical routine fails to converge or hits a singular system.
class SolverError : public std::runtime_error {
   public:
    explicit SolverError(const std::string &what) : std::runtime_error(what) {
    }
};

}  // namespace coordcert

#endif
