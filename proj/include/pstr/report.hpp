// Copyright 2026 The pstr Authors
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

#include "pstr/harness.hpp"

#include <json.hpp>

#include <string>

namespace pstr {

/// Deterministic report document; wall-clock figures are excluded.
nlohmann::json report_to_json(const ExperimentReport& report);

/// Per-method wall-clock seconds (and solve seconds for Nystrom sweeps).
nlohmann::json timing_to_json(const ExperimentReport& report);

/// Aligned text table built from a report document: one row for the dataset,
/// one column per method, cells like "0.062 (0.01)".
std::string render_table(const nlohmann::json& report);

}  // namespace pstr
