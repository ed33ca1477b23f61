// Copyright 2026 The SUE Authors
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

// Scenario files (.sue.jsonl): an optional header {"name":...,"epoch_ms":...}
// followed by one envelope per line, each with an extra "offset_ms".

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sue/gateway/envelope.hpp"

namespace sue::gateway {

struct ScenarioEntry {
  TimeMs offset_ms = 0;
  Envelope envelope;
  int line = 0;
};

struct Scenario {
  std::string name;
  TimeMs epoch_ms = 0;
  std::vector<ScenarioEntry> entries;
};

struct ScenarioDiagnostic {
  int line = 0;
  std::string message;  // already names the line

  bool operator==(const ScenarioDiagnostic&) const = default;
};

struct ScenarioLoad {
  std::optional<Scenario> scenario;  // set only when there are no diagnostics
  std::vector<ScenarioDiagnostic> diagnostics;

  [[nodiscard]] bool ok() const { return diagnostics.empty(); }
};

/// Strict: every problem is reported and any diagnostic rejects the file.
/// Entries may be sensor_register, simple_event or control envelopes, with
/// seq running 1, 2, 3, ... and non-decreasing offsets. Without a header
/// epoch the first entry's time_ms - offset_ms is used.
ScenarioLoad load_scenario(std::string_view bytes);

/// As above; the name defaults to the file stem. A missing or unreadable
/// file is a line-0 diagnostic.
ScenarioLoad load_scenario_file(const std::string& path);

/// Serializes back to the file format (header plus entries).
std::string format_scenario(const Scenario& scenario);

}  // namespace sue::gateway
