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

#include "sue/cui/cui.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <initializer_list>
#include <span>

#include "sue/core/error.hpp"

namespace sue::cui {

std::string_view to_string(IntentKind kind) {
  switch (kind) {
    case IntentKind::show_sensors_by: return "show_sensors_by";
    case IntentKind::set_palette: return "set_palette";
    case IntentKind::filter_events: return "filter_events";
    case IntentKind::describe_event: return "describe_event";
    case IntentKind::show_timeline: return "show_timeline";
    case IntentKind::help: return "help";
    case IntentKind::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(SensorView view) { return view == SensorView::owner ? "owner" : "type"; }

std::string_view to_string(DirectiveOp op) {
  switch (op) {
    case DirectiveOp::set_sensor_view: return "set_sensor_view";
    case DirectiveOp::set_palette: return "set_palette";
    case DirectiveOp::set_filter: return "set_filter";
    case DirectiveOp::focus_event: return "focus_event";
    case DirectiveOp::show_timeline: return "show_timeline";
    case DirectiveOp::none: return "none";
  }
  return "none";
}

namespace {

struct Token {
  std::string raw;    // original case, for event ids
  std::string lower;
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!word_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && word_char(text[j])) ++j;
    std::string_view w = text.substr(i, j - i);
    while (!w.empty() && (w.front() == '.' || w.front() == '-')) w.remove_prefix(1);
    while (!w.empty() && (w.back() == '.' || w.back() == '-')) w.remove_suffix(1);
    if (!w.empty()) {
      Token t{std::string(w), std::string(w)};
      for (char& c : t.lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      out.push_back(std::move(t));
    }
    i = j;
  }
  return out;
}

using Words = std::span<const std::string_view>;
using WordList = std::initializer_list<std::string_view>;

bool in(std::string_view w, Words set) { return std::find(set.begin(), set.end(), w) != set.end(); }
bool in(std::string_view w, WordList set) { return in(w, Words(set.begin(), set.size())); }

bool any_of(const std::vector<Token>& ts, Words set) {
  return std::any_of(ts.begin(), ts.end(), [&](const Token& t) { return in(t.lower, set); });
}
bool any_of(const std::vector<Token>& ts, WordList set) { return any_of(ts, Words(set.begin(), set.size())); }

bool has_digit(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

bool has_alpha(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)); });
}

constexpr std::string_view kDescribe[]{"describe", "explain", "detail", "details", "inspect", "focus",
    "about", "open"};
constexpr std::string_view kPalette[]{"palette", "colour", "color", "colours", "colors", "colourblind",
    "colorblind", "colour-blind", "color-blind", "accessible", "accessibility", "scheme", "theme",
    "high-contrast"};
constexpr std::string_view kAccessible[]{"accessible", "accessibility", "colourblind", "colorblind",
    "colour-blind", "color-blind", "blind", "high-contrast", "contrast", "deuteranopia", "protanopia",
    "tritanopia"};
constexpr std::string_view kDefaultPalette[]{"default", "standard", "normal", "original", "regular", "usual"};
constexpr std::string_view kTimeline[]{"timeline", "chronology", "history"};
constexpr std::string_view kFilter[]{"filter", "only", "just", "unfilter"};
constexpr std::string_view kClear[]{"clear", "remove", "reset", "drop", "cancel"};
constexpr std::string_view kEvents[]{"event", "events", "detections", "alerts"};
constexpr std::string_view kOwner[]{"owner", "owners", "ownership", "owned", "flag", "flags", "country",
    "countries", "nation", "nations", "nationality", "partner", "partners", "coalition"};
constexpr std::string_view kType[]{"type", "types", "kind", "kinds", "glyph", "glyphs", "icon", "icons",
    "category"};
constexpr std::string_view kToggle[]{"toggle", "switch", "flip", "swap", "alternate"};
constexpr std::string_view kSensor[]{"sensor", "sensors", "view", "views", "marker", "markers"};
constexpr std::string_view kHelp[]{"help", "commands", "usage", "options"};
constexpr std::string_view kFilterNoise[]{"filter", "filters", "only", "just", "show", "display", "events",
    "event", "by", "type", "types", "the", "me", "to", "of", "on", "for", "with", "kind", "please", "all",
    "set", "level", "belief", "detections", "alerts"};

std::optional<std::string> event_id(const std::vector<Token>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string& w = ts[i].lower;
    if (!has_digit(w)) continue;
    const bool after_event = i > 0 && in(ts[i - 1].lower, {"event", "id", "detection"});
    const bool id_shaped = has_alpha(w) && (w.find('-') != std::string::npos || w.find('_') != std::string::npos);
    if (after_event || id_shaped) return ts[i].raw;
  }
  return std::nullopt;
}

std::optional<TimeMs> unit_ms(std::string_view u) {
  if (in(u, {"ms", "millisecond", "milliseconds"})) return 1;
  if (in(u, {"s", "sec", "secs", "second", "seconds"})) return 1000;
  if (in(u, {"m", "min", "mins", "minute", "minutes"})) return 60'000;
  if (in(u, {"h", "hr", "hrs", "hour", "hours"})) return 3'600'000;
  return std::nullopt;
}

// "last 5 minutes", "past hour", "last 30s".
std::optional<TimeMs> trailing_window(const std::vector<Token>& ts) {
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (!in(ts[i].lower, {"last", "past", "previous"})) continue;
    const std::string& next = ts[i + 1].lower;
    if (auto u = unit_ms(next)) return *u;
    std::int64_t n = 0;
    auto [end, ec] = std::from_chars(next.data(), next.data() + next.size(), n);
    if (ec != std::errc() || n <= 0) continue;
    std::string_view rest(end, next.data() + next.size() - end);
    if (!rest.empty()) {
      if (auto u = unit_ms(rest)) return n * *u;
    } else if (i + 2 < ts.size()) {
      if (auto u = unit_ms(ts[i + 2].lower)) return n * *u;
    }
  }
  return std::nullopt;
}

std::optional<std::string> level_word(const std::vector<Token>& ts) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string& w = ts[i].lower;
    if (w == "insignificant" || (w == "significant" && i > 0 && ts[i - 1].lower == "not")) return "not_significant";
    if (in(w, {"strong", "medium", "weak"})) return w;
  }
  return std::nullopt;
}

std::optional<Intent> match_filter(const std::vector<Token>& ts) {
  const bool clear = any_of(ts, {"unfilter"}) || (any_of(ts, kClear) && any_of(ts, {"filter", "filters"})) ||
                     (any_of(ts, {"all"}) && any_of(ts, kEvents) && !any_of(ts, kFilter));
  if (clear) return Intent{IntentKind::filter_events, "none", "", std::nullopt};

  const auto level = level_word(ts);
  const bool triggered = any_of(ts, kFilter) || (level && any_of(ts, kEvents));
  if (!triggered) return std::nullopt;
  if (level) return Intent{IntentKind::filter_events, "level", *level, std::nullopt};
  // Event types are identifiers: the word after "type", else the first
  // word that is not part of the command phrasing.
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    if (ts[i].lower == "type" && !in(ts[i + 1].lower, kFilterNoise)) {
      return Intent{IntentKind::filter_events, "type", ts[i + 1].lower, std::nullopt};
    }
  }
  for (const auto& t : ts) {
    if (!in(t.lower, kFilterNoise)) return Intent{IntentKind::filter_events, "type", t.lower, std::nullopt};
  }
  return std::nullopt;
}

std::optional<Intent> match_sensor_view(const std::vector<Token>& ts) {
  const bool owner = any_of(ts, kOwner);
  const bool type = any_of(ts, kType);
  const bool sensorish = any_of(ts, kSensor);
  if (any_of(ts, kToggle) && sensorish && owner == type) {
    return Intent{IntentKind::show_sensors_by, "toggle", "", std::nullopt};
  }
  if (owner) return Intent{IntentKind::show_sensors_by, "owner", "", std::nullopt};
  if (type && sensorish) return Intent{IntentKind::show_sensors_by, "type", "", std::nullopt};
  return std::nullopt;
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace

Intent interpret(std::string_view utterance) {
  const auto ts = tokenize(utterance);
  const auto unknown = [&] { return Intent{IntentKind::unknown, trim(utterance), "", std::nullopt}; };
  if (ts.empty()) {
    if (trim(utterance) == "?") return Intent{IntentKind::help, "", "", std::nullopt};
    return unknown();
  }

  if (any_of(ts, kDescribe) || any_of(ts, {"event", "id"})) {
    if (auto id = event_id(ts)) return Intent{IntentKind::describe_event, *id, "", std::nullopt};
  }

  if (any_of(ts, kPalette)) {
    std::optional<std::string> value;
    for (const auto& t : ts) {
      if (in(t.lower, kAccessible)) value = "accessible";
      if (in(t.lower, kDefaultPalette)) value = "default";
    }
    if (value) return Intent{IntentKind::set_palette, *value, "", std::nullopt};
  }

  if (any_of(ts, kTimeline)) return Intent{IntentKind::show_timeline, "", "", trailing_window(ts)};

  if (auto f = match_filter(ts)) return *f;
  if (auto v = match_sensor_view(ts)) return *v;
  if (any_of(ts, kHelp) || trim(utterance).ends_with("what can you do?") ||
      trim(utterance).ends_with("what can you do")) {
    return Intent{IntentKind::help, "", "", std::nullopt};
  }
  return unknown();
}

namespace {

std::string level_phrase(std::string_view level) {
  std::string s(level);
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

std::string window_phrase(TimeMs ms) {
  struct Unit {
    TimeMs size;
    const char* name;
  };
  for (Unit u : {Unit{3'600'000, "hour"}, Unit{60'000, "minute"}, Unit{1000, "second"}, Unit{1, "millisecond"}}) {
    if (ms % u.size != 0) continue;
    const TimeMs n = ms / u.size;
    if (n == 1) return std::string("the last ") + u.name;
    return "the last " + std::to_string(n) + " " + u.name + "s";
  }
  return "the last " + std::to_string(ms) + " milliseconds";
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string describe(const analytics::RunLog& log, const std::string& id) {
  if (const SimpleEvent* e = log.simple_event(id)) {
    std::string s = id + ": " + e->event_type + " from " + e->sensor_id;
    if (const Sensor* sensor = log.sensor(e->sensor_id)) s += " (" + sensor->owner.code() + ")";
    return s + " at confidence " + fixed2(e->confidence) + ".";
  }
  const ComplexEvent& ce = *log.complex_event(id);
  return id + ": " + ce.fluent + ", " + level_phrase(to_string(ce.belief)) + " belief at probability " +
         fixed2(ce.probability) + " from " + std::to_string(ce.constituents.size()) + " constituent" +
         (ce.constituents.size() == 1 ? "" : "s") + ".";
}

constexpr std::string_view kHelpText =
    "Try: \"show sensors by owner\", \"show sensors by type\", \"toggle sensor view\", "
    "\"use the accessible palette\", \"show only strong events\", \"filter by type gunshot\", "
    "\"clear filter\", \"describe event <id>\", \"show timeline for the last 5 minutes\".";

}  // namespace

Outcome execute(const Intent& intent, Session& session, const analytics::RunLog& log) {
  Outcome out;
  switch (intent.kind) {
    case IntentKind::show_sensors_by: {
      SensorView view = intent.arg == "owner" ? SensorView::owner : SensorView::type;
      if (intent.arg == "toggle") view = session.sensor_view == SensorView::type ? SensorView::owner : SensorView::type;
      out.directive = {DirectiveOp::set_sensor_view, Json{{"view", to_string(view)}}};
      out.reply = "Showing sensors by " + std::string(to_string(view)) + ".";
      break;
    }
    case IntentKind::set_palette:
      out.directive = {DirectiveOp::set_palette, Json{{"palette", intent.arg}}};
      out.reply = "Switched to the " + intent.arg + " palette.";
      break;
    case IntentKind::filter_events:
      if (intent.arg == "none") {
        out.directive = {DirectiveOp::set_filter, Json{{"field", "none"}}};
        out.reply = "Showing all events.";
      } else {
        out.directive = {DirectiveOp::set_filter, Json{{"field", intent.arg}, {"value", intent.value}}};
        out.reply = "Showing only " + level_phrase(intent.value) + " events.";
      }
      break;
    case IntentKind::describe_event:
      if (!log.contains(intent.arg)) {
        out.reply = "no such event: " + intent.arg;
        return out;
      }
      out.directive = {DirectiveOp::focus_event,
                       Json{{"event", intent.arg}, {"detail", analytics::event_detail(log, intent.arg)}}};
      out.reply = describe(log, intent.arg);
      break;
    case IntentKind::show_timeline: {
      analytics::TimeRange range = analytics::run_extent(log);
      if (intent.last_ms) range.t0 = range.t1 - *intent.last_ms;
      out.directive = {DirectiveOp::show_timeline, Json{{"t0", range.t0}, {"t1", range.t1}}};
      out.reply = intent.last_ms ? "Showing the timeline for " + window_phrase(*intent.last_ms) + "."
                                 : std::string("Showing the event timeline.");
      break;
    }
    case IntentKind::help:
      out.reply = std::string(kHelpText);
      return out;
    case IntentKind::unknown:
      out.reply = "Sorry, I did not understand \"" + intent.arg + "\". Say \"help\" to see what I can do.";
      return out;
  }
  apply(out.directive, session, log);
  return out;
}

namespace {

std::string string_arg(const UiDirective& d, const char* key) {
  auto it = d.args.find(key);
  if (it == d.args.end() || !it->is_string()) {
    throw ValidationError(std::string(to_string(d.op)) + " needs a string '" + key + "'");
  }
  return it->get<std::string>();
}

}  // namespace

void apply(const UiDirective& d, Session& session, const analytics::RunLog& log) {
  switch (d.op) {
    case DirectiveOp::set_sensor_view: {
      const std::string view = string_arg(d, "view");
      if (view != "type" && view != "owner") throw ValidationError("unknown sensor view '" + view + "'");
      session.sensor_view = view == "owner" ? SensorView::owner : SensorView::type;
      break;
    }
    case DirectiveOp::set_palette: {
      const auto palette = parse_palette(string_arg(d, "palette"));
      if (!palette) throw ValidationError("unknown palette '" + string_arg(d, "palette") + "'");
      session.palette = *palette;
      break;
    }
    case DirectiveOp::set_filter: {
      const std::string field = string_arg(d, "field");
      if (field == "none") {
        session.filter.reset();
      } else if (field == "level") {
        const std::string value = string_arg(d, "value");
        if (!parse_belief_level(value)) throw ValidationError("unknown belief level '" + value + "'");
        session.filter = EventFilter{field, value};
      } else if (field == "type") {
        session.filter = EventFilter{field, string_arg(d, "value")};
      } else {
        throw ValidationError("unknown filter field '" + field + "'");
      }
      break;
    }
    case DirectiveOp::focus_event: {
      const std::string id = string_arg(d, "event");
      if (!log.contains(id)) throw NotFoundError("no such event: " + id);
      session.focused_event = id;
      break;
    }
    case DirectiveOp::show_timeline:
    case DirectiveOp::none:
      break;
  }
}

void to_json(Json& j, const Intent& v) {
  j = Json{{"kind", to_string(v.kind)}, {"arg", v.arg}};
  if (!v.value.empty()) j["value"] = v.value;
  if (v.last_ms) j["last_ms"] = *v.last_ms;
}

void to_json(Json& j, const Session& v) {
  j = Json{{"sensor_view", to_string(v.sensor_view)}, {"palette", to_string(v.palette)}};
  j["filter"] = v.filter ? Json{{"field", v.filter->field}, {"value", v.filter->value}} : Json(nullptr);
  j["focused_event"] = v.focused_event ? Json(*v.focused_event) : Json(nullptr);
}

void to_json(Json& j, const UiDirective& v) {
  j = v.args.is_object() ? v.args : Json::object();
  j["op"] = to_string(v.op);
}

UiDirective directive_from_json(const Json& j) {
  if (!j.is_object()) throw DecodeError("directive must be an object");
  auto op = j.find("op");
  if (op == j.end() || !op->is_string()) throw DecodeError("missing field 'op'");
  static constexpr std::array kOps{DirectiveOp::set_sensor_view, DirectiveOp::set_palette, DirectiveOp::set_filter,
                                   DirectiveOp::focus_event,     DirectiveOp::show_timeline, DirectiveOp::none};
  for (DirectiveOp candidate : kOps) {
    if (to_string(candidate) == op->get<std::string>()) {
      UiDirective d{candidate, j};
      d.args.erase("op");
      return d;
    }
  }
  throw DecodeError("unknown directive op '" + op->get<std::string>() + "'");
}

}  // namespace sue::cui
