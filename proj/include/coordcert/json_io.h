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

#ifndef COORDCERT_JSON_IO_H
#define COORDCERT_JSON_IO_H

#include <filesystem>
#include <string>

#include "coordcert/behavior.h"
#include "coordcert/circuit.h"
#include "coordcert/linalg.h"
#include "coordcert/realization.h"
#include "json.hpp"

namespace coordcert {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Rounds to `digits` significant decimal digits.
double round_sig(double x, int digits = 12);

/// A rounded JSON number.
Json number(double x);

/// Nested arrays of [re, im] pairs, row by row.
Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j, const std::string &where);
Json vector_to_json(const ComplexVector &v);
ComplexVector vector_from_json(const Json &j, const std::string &where);
Json real_matrix_to_json(const RealMatrix &m);
RealMatrix real_matrix_from_json(const Json &j, const std::string &where);

Json to_json(const CausalCircuit &circuit);
CausalCircuit circuit_from_json(const Json &j);

Json to_json(const QuantumRealization &realization);
/// Parses and validates against `circuit`; the first violation is reported
/// with its node id.
QuantumRealization realization_from_json(const Json &j, const CausalCircuit &circuit);

Json to_json(const Behavior &behavior);
Behavior behavior_from_json(const Json &j);

Json to_json(const SettingsBehavior &sb);
SettingsBehavior settings_behavior_from_json(const Json &j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json &j);

Json read_json_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace coordcert

#endif
