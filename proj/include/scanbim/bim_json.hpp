// Copyright 2026 The scanbim Authors
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

#include "scanbim/metrics.hpp"
#include "scanbim/model.hpp"

#include <filesystem>
#include <string>

namespace scanbim {

inline constexpr const char* kModelSchemaName = "scanbim.model";
inline constexpr int kModelSchemaVersion = 1;

/// Canonical JSON text: sorted keys, shortest round-trip number formatting.
std::string model_to_json(const BimModel& model);

/// Throws ParseError on malformed JSON or missing fields,
/// SchemaVersionMismatch on a foreign schema, InvalidModel when the model
/// breaks its invariants.
BimModel model_from_json(const std::string& text);

void write_bim_json(const BimModel& model, const std::filesystem::path& path);
BimModel read_bim_json(const std::filesystem::path& path);

std::string report_to_json(const EvalReport& report);

}  // namespace scanbim
