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

// Keyword command interpreter for the analyst console. The grammar and its
// priority order are described in docs/cui-grammar.md.

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "sue/analytics/analytics.hpp"
#include "sue/core/json.hpp"

namespace sue::cui {

enum class IntentKind { show_sensors_by, set_palette, filter_events, describe_event, show_timeline, help, unknown };

std::string_view to_string(IntentKind kind);

enum class SensorView { type, owner };

std::string_view to_string(SensorView view);

struct Intent {
  IntentKind kind = IntentKind::unknown;
  // show_sensors_by: "type" | "owner" | "toggle"
  // set_palette:     "default" | "accessible"
  // filter_events:   "level" | "type" | "none"
  // describe_event:  event id
  // unknown:         the raw utterance
  std::string arg;
  std::string value;              // filter value (level name or event type)
  std::optional<TimeMs> last_ms;  // show_timeline: trailing window

  bool operator==(const Intent&) const = default;
};

/// Pure: the same utterance always yields the same intent.
Intent interpret(std::string_view utterance);

struct EventFilter {
  std::string field;  // "level" | "type"
  std::string value;

  bool operator==(const EventFilter&) const = default;
};

/// Server-side view state of one console session.
struct Session {
  SensorView sensor_view = SensorView::type;
  Palette palette = Palette::standard;
  std::optional<EventFilter> filter;
  std::optional<std::string> focused_event;

  bool operator==(const Session&) const = default;
};

enum class DirectiveOp { set_sensor_view, set_palette, set_filter, focus_event, show_timeline, none };

std::string_view to_string(DirectiveOp op);

/// Console instruction. On the wire the arguments sit beside "op":
/// {"op":"set_sensor_view","view":"owner"}.
struct UiDirective {
  DirectiveOp op = DirectiveOp::none;
  Json args = Json::object();

  bool operator==(const UiDirective&) const = default;
};

struct Outcome {
  std::string reply;
  UiDirective directive;
};

/// Runs the intent against the session. describe_event looks the id up in
/// the run log; an unknown id leaves the session alone and replies
/// "no such event: <id>".
Outcome execute(const Intent& intent, Session& session, const analytics::RunLog& log);

/// Applies a directive that came straight from the console (a marker
/// click, a toolbar toggle). Throws ValidationError when it is malformed
/// and NotFoundError when it names a missing event.
void apply(const UiDirective& directive, Session& session, const analytics::RunLog& log);

void to_json(Json& j, const Intent& v);
void to_json(Json& j, const Session& v);
void to_json(Json& j, const UiDirective& v);
UiDirective directive_from_json(const Json& j);

}  // namespace sue::cui
