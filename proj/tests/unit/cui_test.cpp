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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "cui_corpus.hpp"
#include "sue/core/error.hpp"
#include "sue/cui/cui.hpp"

namespace sue::cui {
namespace {

analytics::RunLog small_log() {
  analytics::RunLog log;
  Sensor s;
  s.id = "cam-1";
  s.owner = PartnerId("UK");
  log.record(s);
  SimpleEvent e;
  e.id = "ev-17";
  e.event_type = "gunshot";
  e.sensor_id = "cam-1";
  e.time = 5'000;
  e.confidence = 0.9;
  log.record(e);
  return log;
}

TEST(Interpret, Examples) {
  EXPECT_EQ(interpret("show sensors by owner"), (Intent{IntentKind::show_sensors_by, "owner", "", std::nullopt}));
  EXPECT_EQ(interpret(""), (Intent{IntentKind::unknown, "", "", std::nullopt}));
  EXPECT_EQ(interpret("describe event ev-17"), (Intent{IntentKind::describe_event, "ev-17", "", std::nullopt}));
}

TEST(Interpret, CorpusMatchesExactly) {
  const auto corpus = testing_support::load_cui_corpus(SUE_FIXTURES_DIR "/cui_corpus.tsv");
  ASSERT_GE(corpus.size(), 40U);
  for (const auto& c : corpus) EXPECT_EQ(interpret(c.utterance), c.expected) << '"' << c.utterance << '"';
}

TEST(Interpret, IsPure) {
  std::mt19937_64 rng(5);
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz -?0123456789";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  for (int i = 0; i < 300; ++i) {
    std::string u;
    for (int n = 0; n < 20; ++n) u += alphabet[pick(rng)];
    EXPECT_EQ(interpret(u), interpret(u));
  }
}

TEST(Execute, SensorViewAndPaletteTemplates) {
  const auto log = small_log();
  Session s;
  Outcome o = execute(interpret("show sensors by owner"), s, log);
  EXPECT_EQ(o.reply, "Showing sensors by owner.");
  EXPECT_EQ(o.directive.op, DirectiveOp::set_sensor_view);
  EXPECT_EQ(o.directive.args["view"], "owner");
  EXPECT_EQ(s.sensor_view, SensorView::owner);

  o = execute(interpret("use the accessible palette"), s, log);
  EXPECT_EQ(o.directive.op, DirectiveOp::set_palette);
  EXPECT_EQ(o.directive.args["palette"], "accessible");
  EXPECT_EQ(s.palette, Palette::accessible);
}

TEST(Execute, UnknownRepliesWithAHelpHint) {
  const auto log = small_log();
  Session s;
  const Session before = s;
  const Outcome o = execute(interpret("frobnicate"), s, log);
  EXPECT_NE(o.reply.find("frobnicate"), std::string::npos);
  EXPECT_NE(o.reply.find("help"), std::string::npos);
  EXPECT_EQ(o.directive.op, DirectiveOp::none);
  EXPECT_EQ(s, before);
}

TEST(Execute, DescribeDelegatesToEventDetail) {
  const auto log = small_log();
  Session s;
  Outcome o = execute(interpret("describe event ev-17"), s, log);
  EXPECT_EQ(o.directive.op, DirectiveOp::focus_event);
  EXPECT_EQ(o.directive.args["detail"], analytics::event_detail(log, "ev-17"));
  EXPECT_EQ(o.reply, "ev-17: gunshot from cam-1 (UK) at confidence 0.90.");
  EXPECT_EQ(s.focused_event, "ev-17");

  o = execute(interpret("describe event ev-99"), s, log);
  EXPECT_EQ(o.reply, "no such event: ev-99");
  EXPECT_EQ(o.directive.op, DirectiveOp::none);
  EXPECT_EQ(s.focused_event, "ev-17");
}

TEST(Execute, FiltersAndTimeline) {
  const auto log = small_log();
  Session s;
  EXPECT_EQ(execute(interpret("show only strong events"), s, log).reply, "Showing only strong events.");
  EXPECT_EQ(s.filter, (EventFilter{"level", "strong"}));
  EXPECT_EQ(execute(interpret("only not significant events"), s, log).reply,
            "Showing only not significant events.");
  EXPECT_EQ(execute(interpret("clear filter"), s, log).reply, "Showing all events.");
  EXPECT_EQ(s.filter, std::nullopt);

  const Outcome t = execute(interpret("timeline for the last 5 minutes"), s, log);
  EXPECT_EQ(t.reply, "Showing the timeline for the last 5 minutes.");
  EXPECT_EQ(t.directive.args["t1"], 5'001);
  EXPECT_EQ(t.directive.args["t0"], 5'001 - 300'000);
  EXPECT_EQ(execute(interpret("show timeline past hour"), s, log).reply, "Showing the timeline for the last hour.");
}

TEST(Execute, ToggleTwiceIsTheIdentity) {
  const auto log = small_log();
  for (SensorView start : {SensorView::type, SensorView::owner}) {
    Session s;
    s.sensor_view = start;
    s.palette = Palette::accessible;
    const Session before = s;
    const Outcome first = execute(interpret("toggle sensor view"), s, log);
    EXPECT_NE(s, before);
    EXPECT_EQ(first.directive.op, DirectiveOp::set_sensor_view);
    execute(interpret("toggle sensor view"), s, log);
    EXPECT_EQ(s, before);
  }
}

TEST(Apply, ValidatesDirectives) {
  const auto log = small_log();
  Session s;
  apply(directive_from_json(Json{{"op", "set_palette"}, {"palette", "accessible"}}), s, log);
  EXPECT_EQ(s.palette, Palette::accessible);
  apply(directive_from_json(Json{{"op", "focus_event"}, {"event", "ev-17"}}), s, log);
  EXPECT_EQ(s.focused_event, "ev-17");
  EXPECT_THROW(apply(directive_from_json(Json{{"op", "focus_event"}, {"event", "nope"}}), s, log), NotFoundError);
  EXPECT_THROW(apply(directive_from_json(Json{{"op", "set_sensor_view"}, {"view", "x"}}), s, log),
               ValidationError);
  EXPECT_THROW(apply(directive_from_json(Json{{"op", "set_filter"}, {"field", "level"}, {"value", "loud"}}), s, log),
               ValidationError);
  EXPECT_THROW(directive_from_json(Json{{"op", "dance"}}), DecodeError);
  EXPECT_THROW(directive_from_json(Json::array()), DecodeError);
}

TEST(Json, DirectiveArgumentsSitBesideOp) {
  const UiDirective d{DirectiveOp::set_sensor_view, Json{{"view", "owner"}}};
  const Json j = d;
  EXPECT_EQ(j, (Json{{"op", "set_sensor_view"}, {"view", "owner"}}));
  EXPECT_EQ(directive_from_json(j), d);
  const Json session = Session{};
  EXPECT_EQ(session["palette"], "default");
  EXPECT_EQ(session["sensor_view"], "type");
  EXPECT_TRUE(session["filter"].is_null());
}

}  // namespace
}  // namespace sue::cui
