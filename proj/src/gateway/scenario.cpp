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

#include "sue/gateway/scenario.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sue/core/error.hpp"
#include "sue/core/model.hpp"

namespace sue::gateway {

namespace {

bool is_header(const Json& j) {
  return j.is_object() && !j.contains("type") && (j.contains("name") || j.contains("epoch_ms"));
}

class Loader {
 public:
  ScenarioLoad run(std::string_view bytes) {
    std::size_t pos = 0;
    int line_no = 0;
    bool seen_content = false;
    while (pos <= bytes.size()) {
      const std::size_t nl = bytes.find('\n', pos);
      std::string_view line = bytes.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? bytes.size() + 1 : nl + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
      const bool first = !seen_content;
      seen_content = true;
      take_line(line, line_no, first);
    }
    ScenarioLoad out;
    out.diagnostics = std::move(diags_);
    if (out.diagnostics.empty()) {
      if (!header_epoch_) scenario_.epoch_ms = first_epoch_.value_or(0);
      out.scenario = std::move(scenario_);
    }
    return out;
  }

 private:
  void fail(int line, const std::string& what, const std::string& detail = {}) {
    diags_.push_back({line, what + " at line " + std::to_string(line) + (detail.empty() ? "" : ": " + detail)});
  }

  void take_line(std::string_view text, int line, bool first) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) return fail(line, "malformed line", "not valid JSON");
    if (first && is_header(j)) return take_header(j, line);

    if (!j.is_object()) return fail(line, "malformed line", "expected an object");
    auto offset = j.find("offset_ms");
    if (offset == j.end() || !offset->is_number_integer()) {
      return fail(line, "malformed line", "missing integer field 'offset_ms'");
    }
    ScenarioEntry entry;
    entry.offset_ms = offset->get<TimeMs>();
    entry.line = line;
    j.erase("offset_ms");
    try {
      entry.envelope = decode_envelope(j);
    } catch (const EnvelopeErrorException& e) {
      return fail(line, "malformed line", e.what());
    }

    if (entry.offset_ms < 0) fail(line, "negative offset");
    if (entry.offset_ms < last_offset_) fail(line, "non-monotone offset");
    last_offset_ = std::max(last_offset_, entry.offset_ms);
    if (entry.envelope.seq != next_seq_) {
      fail(line, "seq gap", "expected " + std::to_string(next_seq_) + ", found " + std::to_string(entry.envelope.seq));
    }
    next_seq_ = entry.envelope.seq + 1;
    if (!first_epoch_) first_epoch_ = entry.envelope.time_ms - entry.offset_ms;

    check_payload(entry.envelope, line);
    scenario_.entries.push_back(std::move(entry));
  }

  void take_header(const Json& j, int line) {
    if (auto name = j.find("name"); name != j.end()) {
      if (!name->is_string()) return fail(line, "malformed header", "'name' must be a string");
      scenario_.name = name->get<std::string>();
    }
    if (auto epoch = j.find("epoch_ms"); epoch != j.end()) {
      if (!epoch->is_number_integer()) return fail(line, "malformed header", "'epoch_ms' must be an integer");
      scenario_.epoch_ms = epoch->get<TimeMs>();
      header_epoch_ = true;
    }
  }

  void check_payload(const Envelope& env, int line) {
    switch (env.type) {
      case EnvelopeType::sensor_register: {
        Sensor s;
        try {
          s = decode<Sensor>(env.payload);
        } catch (const std::exception& e) {
          return fail(line, "invalid sensor", e.what());
        }
        for (const auto& v : validate_sensor(s)) fail(line, "invalid sensor", v.message);
        if (registry_.add(s) == SensorRegistry::AddResult::conflict) {
          fail(line, "conflicting sensor", "'" + s.id + "' already registered differently");
        }
        return;
      }
      case EnvelopeType::simple_event: {
        SimpleEvent e;
        try {
          e = decode<SimpleEvent>(env.payload);
        } catch (const std::exception& ex) {
          return fail(line, "invalid event", ex.what());
        }
        for (const auto& v : validate_event(e, registry_)) {
          if (v.message == "unregistered sensor") {
            fail(line, "unregistered sensor");
          } else {
            fail(line, "invalid event", v.message);
          }
        }
        if (!event_ids_.insert(e.id).second) fail(line, "duplicate event", "'" + e.id + "'");
        return;
      }
      case EnvelopeType::control:
        if (!env.payload.contains("op") || !env.payload["op"].is_string()) {
          fail(line, "invalid control", "missing string field 'op'");
        }
        return;
      default:
        fail(line, "disallowed type", std::string(to_string(env.type)));
    }
  }

  Scenario scenario_;
  std::vector<ScenarioDiagnostic> diags_;
  SensorRegistry registry_;
  std::set<std::string> event_ids_;
  TimeMs last_offset_ = 0;
  std::int64_t next_seq_ = 1;
  std::optional<TimeMs> first_epoch_;
  bool header_epoch_ = false;
};

}  // namespace

ScenarioLoad load_scenario(std::string_view bytes) { return Loader().run(bytes); }

ScenarioLoad load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return ScenarioLoad{std::nullopt, {{0, "cannot read " + path}}};
  std::stringstream buf;
  buf << in.rdbuf();
  ScenarioLoad load = load_scenario(buf.str());
  if (load.scenario && load.scenario->name.empty()) {
    std::string stem = std::filesystem::path(path).filename().string();
    if (auto dot = stem.find('.'); dot != std::string::npos) stem.resize(dot);
    load.scenario->name = stem;
  }
  return load;
}

std::string format_scenario(const Scenario& scenario) {
  std::string out = Json{{"name", scenario.name}, {"epoch_ms", scenario.epoch_ms}}.dump() + "\n";
  for (const auto& e : scenario.entries) {
    Json j = to_json(e.envelope);
    j["offset_ms"] = e.offset_ms;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace sue::gateway
