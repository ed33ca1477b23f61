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

// End-to-end acceptance checks. Prints one PASS/FAIL line per check and
// exits non-zero if any fails.

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "cui_corpus.hpp"
#include "oracle_check.hpp"
#include "protocol_fixture.hpp"
#include "replay_capture.hpp"
#include "rule_gen.hpp"
#include "run_gen.hpp"
#include "sue/analytics/analytics.hpp"
#include "sue/cep/reasoning.hpp"
#include "sue/core/model.hpp"

namespace {

using namespace sue;
namespace ts = sue::testing_support;
using SteadyClock = std::chrono::steady_clock;

struct Result {
  bool pass = false;
  std::string detail;
};

Result fail(std::string why) { return {false, std::move(why)}; }

double seconds_since(SteadyClock::time_point t0) {
  return std::chrono::duration<double>(SteadyClock::now() - t0).count();
}

gateway::Scenario load(const std::string& path) {
  auto l = gateway::load_scenario_file(path);
  if (!l.ok()) throw std::runtime_error(path + ": " + l.diagnostics[0].message);
  return *l.scenario;
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. Chained tick updates against possible-worlds enumeration.
Result oracle_agreement() {
  const auto t0 = SteadyClock::now();
  std::mt19937_64 rng(20260101);
  int checked = 0, skipped = 0;
  double worst = 0.0;
  while (checked < 500) {
    const auto s = ts::random_reasoning_scenario(rng, 12);
    const auto run = ts::run_chained(s);
    // Exact agreement is claimed only where no event feeds two groundings
    // of one fluent; such scenarios are drawn again.
    if (!run.disjoint) {
      ++skipped;
      continue;
    }
    worst = std::max(worst, ts::oracle_gap(s, run));
    ++checked;
  }
  const double secs = seconds_since(t0);
  const std::string detail =
      fmt("%d scenarios, max gap %.3g, %.2f s (%d shared-constituent draws redrawn)", checked, worst, secs, skipped);
  return {worst <= 1e-9 && secs <= 60.0, detail};
}

// 2. The shooting scenario end to end through the gateway.
Result shooting_golden() {
  const auto scenario = load(SUE_DATA_DIR "/shooting.sue.jsonl");
  const auto rules = rules::load_rules_file(SUE_DATA_DIR "/shooting.sue-rules");

  gateway::GatewayConfig config;
  config.engine.clock.epoch_ms = scenario.epoch_ms;
  config.mode = gateway::ClockMode::replay;
  gateway::Gateway gw(rules, config);
  const auto console = gw.connect(gateway::Endpoint::console);
  gateway::Replayer replayer(gw, scenario, std::nullopt);
  std::vector<Json> complex, traces;
  replayer.on_deliver = [&](std::size_t) {
    while (auto f = gw.pop(console)) {
      Json j = Json::parse(*f);
      if (j["type"] == "complex_event") complex.push_back(j["payload"]);
      if (j["type"] == "proof_trace") traces.push_back(j["payload"]);
    }
  };
  replayer.run();

  // The inputs the check is about.
  const SimpleEvent* gun = gw.log().simple_event("ev-2");
  const SimpleEvent* weapon = gw.log().simple_event("ev-3");
  if (!gun || !weapon || gun->confidence != 0.9 || weapon->confidence != 0.8) return fail("scenario inputs changed");
  const double gap_s = static_cast<double>(weapon->time - gun->time) / 1000.0;
  const double dist_m = great_circle_m(gun->position, weapon->position);
  if (gap_s > 10.0 || dist_m > 50.0) return fail("pair not within 10 s / 50 m");

  // Independent expectation from world enumeration.
  const std::vector<SimpleEvent> pair{*gun, *weapon};
  const double oracle =
      cep::exact_holds_probability(rules, pair, "shooting", config.engine.clock.index_of(weapon->time),
                                   config.engine.clock);

  if (complex.size() < 2) return fail(fmt("expected open and close, got %zu complex events", complex.size()));
  const Json& open = complex.front();
  const Json& close = complex.back();
  if (open["id"] != close["id"]) return fail("close does not refer to the opened event");
  const double p = open["probability"].get<double>();
  if (std::abs(p - oracle) > 1e-12 || std::abs(oracle - 0.72) > 1e-12) return fail(fmt("probability %.17g", p));
  if (open["belief"] != "medium") return fail("belief " + open["belief"].dump());
  if (open["constituents"] != Json::array({"ev-2", "ev-3"})) return fail("constituents " + open["constituents"].dump());

  // Every broadcast trace recomputes; the opening one lands on 0.72.
  for (const auto& t : traces) {
    const double again = cep::update_probability(t["prob_before"].get<double>(), t["init_prob"].get<double>(),
                                                 t["term_prob"].get<double>());
    if (again != t["prob_after"].get<double>()) return fail("trace " + t["id"].dump() + " does not recompute");
  }
  const Json detail = analytics::event_detail(gw.log(), open["id"].get<std::string>());
  if (detail["constituents"].size() != 2 || detail["constituents"][0]["event_type"] != "gunshot" ||
      detail["constituents"][1]["event_type"] != "weapon_sighting") {
    return fail("event detail constituents out of order");
  }

  const SimpleEvent* clear = gw.log().simple_event("ev-5");
  if (!clear || clear->event_type != "all_clear" || clear->confidence != 1.0) return fail("all_clear input changed");
  if (close["probability"] != 0.0 || close["belief"] != "not_significant") {
    return fail("close at " + close["probability"].dump());
  }
  return {true, fmt("p=%.2f (oracle %.2f), medium, 2 constituents, %zu traces recompute, closed at 0.0", p, oracle,
                    traces.size())};
}

// 3. Speed 1 and as-fast-as-possible give the same reasoning bytes.
Result determinism() {
  const auto rules = rules::load_rules_file(SUE_DATA_DIR "/shooting.sue-rules");
  const auto t0 = SteadyClock::now();
  std::size_t frames = 0;
  for (const char* path : {SUE_FIXTURES_DIR "/scenarios/burst.sue.jsonl", SUE_DATA_DIR "/shooting.sue.jsonl"}) {
    const auto s = load(path);
    // The shooting scenario spans a minute; speed 20 keeps the run short
    // while still pacing on the wall clock.
    const double speed = s.name == "burst" ? 1.0 : 20.0;
    const auto paced = ts::replay_capture(rules, s, speed);
    const auto fast = ts::replay_capture(rules, s, std::nullopt);
    if (paced.reasoning.empty()) return fail(s.name + ": no reasoning output");
    if (paced.reasoning != fast.reasoning) return fail(s.name + ": outputs differ");
    frames += fast.reasoning.size();
  }
  return {true, fmt("%zu complex_event/proof_trace frames identical (burst at 1x, shooting at 20x, vs fast), %.1f s",
                    frames, seconds_since(t0))};
}

// 4. Rule DSL round trips and malformed fixtures.
Result rule_dsl() {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 1000; ++i) {
    const auto rs = ts::random_rule_set(rng);
    const std::string text = rules::format_rules(rs);
    const auto parsed = rules::parse_rules(text);
    if (!parsed.ok()) return fail(fmt("round trip %d does not parse", i));
    if (!(*parsed.rules == rs)) return fail(fmt("round trip %d changes the rule set", i));
    if (rules::format_rules(*parsed.rules) != text) return fail(fmt("round trip %d changes the text", i));
  }
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SUE_FIXTURES_DIR "/rules/malformed")) {
    if (entry.path().extension() != ".sue-rules") continue;
    ++files;
    std::ifstream in(entry.path());
    std::stringstream buf;
    buf << in.rdbuf();
    std::vector<std::string> expected;
    std::istringstream lines(buf.str());
    for (std::string line; std::getline(lines, line);) {
      if (line.rfind("# expect: ", 0) == 0) expected.push_back(line.substr(10));
    }
    const auto r = rules::parse_rules(buf.str());
    std::vector<std::string> actual;
    for (const auto& d : r.diagnostics) actual.push_back(d.to_string());
    if (expected.empty() || r.ok() || actual != expected) return fail(entry.path().filename().string());
  }
  return {files >= 10, fmt("1000 round trips, %d malformed fixtures with exact line:column", files)};
}

// 5. Protocol fixtures, plus exactly one reply per inbound frame.
Result protocol() {
  int fixtures = 0;
  for (const auto& entry : std::filesystem::directory_iterator(SUE_FIXTURES_DIR "/protocol")) {
    const auto failures = ts::run_protocol_fixture(entry.path().string());
    if (!failures.empty()) return fail(failures.front());
    ++fixtures;
  }
  for (const char* required : {"seq-gap", "duplicate-id", "out-of-range-confidence"}) {
    if (!std::filesystem::exists(std::string(SUE_FIXTURES_DIR "/protocol/") + required + ".json")) {
      return fail(std::string("missing fixture ") + required);
    }
  }

  gateway::GatewayConfig config;
  gateway::Gateway gw(ts::shooting_rules(), config);
  const auto ingest = gw.connect(gateway::Endpoint::ingest);
  std::mt19937_64 rng(5);
  std::int64_t seq = 1;
  const int frames = 5000;
  for (int i = 0; i < frames; ++i) {
    Json env{{"v", 1}, {"type", "simple_event"}, {"seq", seq}, {"time_ms", 0}, {"payload", Json::object()}};
    std::string text;
    switch (rng() % 7) {
      case 0: text = "{"; break;
      case 1: env["seq"] = seq + 1 + static_cast<std::int64_t>(rng() % 3); break;
      case 2: env["type"] = "bogus"; break;
      case 3: env["type"] = "control"; env["payload"] = {{"op", "clock"}}; break;
      case 4:
        env["type"] = "sensor_register";
        env["payload"] = {{"id", "s" + std::to_string(rng() % 4)}, {"kind", "camera"}, {"owner", "UK"},
                          {"position", {{"lat", 1.0}, {"lon", static_cast<double>(rng() % 2)}}}};
        break;
      default:
        env["payload"] = {{"id", "e" + std::to_string(rng() % 100)}, {"event_type", "gunshot"},
                          {"sensor_id", "s" + std::to_string(rng() % 5)}, {"time", 500},
                          {"position", {{"lat", 1.0}, {"lon", 0.0}}}, {"region_radius_m", 5.0},
                          {"confidence", static_cast<double>(rng() % 13) / 10.0}, {"modality", "video"}};
    }
    gw.receive(ingest, text.empty() ? env.dump() : text);
    int replies = 0;
    while (auto f = gw.pop(ingest)) {
      const Json r = Json::parse(*f);
      if (r["type"] != "ack" && r["type"] != "error") return fail("reply of type " + r["type"].dump());
      const std::string code = r["payload"].value("code", "");
      if (code != "seq_gap" && code != "malformed_json") ++seq;
      ++replies;
    }
    if (replies != 1) return fail(fmt("frame %d got %d replies", i, replies));
  }
  return {fixtures >= 3, fmt("%d fixtures match; %d mixed frames each got exactly one ack/error", fixtures, frames)};
}

// 6. Timeline buckets conserve summary totals.
Result conservation() {
  std::mt19937_64 rng(6);
  int checks = 0;
  for (int run = 0; run < 100; ++run) {
    const auto log = ts::random_run(rng);
    const auto extent = analytics::run_extent(log);
    for (int q = 0; q < 10; ++q) {
      const TimeMs a = ts::uniform_int(rng, static_cast<int>(extent.t0) - 2000, static_cast<int>(extent.t1) + 2000);
      const TimeMs b = ts::uniform_int(rng, static_cast<int>(extent.t0) - 2000, static_cast<int>(extent.t1) + 2000);
      const analytics::TimeRange range{std::min(a, b), std::max(a, b)};
      const TimeMs width = ts::uniform_int(rng, 1, 7000);
      const auto s = analytics::summary(log, range);
      std::int64_t sum = 0;
      for (const auto& bucket : analytics::timeline(log, range, width)) {
        for (const auto& [type, n] : bucket.counts) sum += n;
      }
      if (sum != s.total) return fail(fmt("run %d query %d: buckets %lld, summary %lld", run, q, (long long)sum,
                                           (long long)s.total));
      ++checks;
    }
  }
  return {true, fmt("%d (range, width) pairs over 100 runs", checks)};
}

// 7. CUI corpus and the view toggle.
Result cui_corpus() {
  const auto corpus = ts::load_cui_corpus(SUE_FIXTURES_DIR "/cui_corpus.tsv");
  std::size_t hits = 0;
  for (const auto& c : corpus) {
    if (cui::interpret(c.utterance) == c.expected) ++hits;
  }
  if (corpus.size() < 40) return fail(fmt("corpus has only %zu utterances", corpus.size()));
  if (hits != corpus.size()) return fail(fmt("%zu/%zu utterances map correctly", hits, corpus.size()));

  const analytics::RunLog log;
  for (const char* phrase : {"toggle sensor view", "flip the view", "toggle between type and owner views"}) {
    for (cui::SensorView start : {cui::SensorView::type, cui::SensorView::owner}) {
      for (Palette palette : {Palette::standard, Palette::accessible}) {
        cui::Session s;
        s.sensor_view = start;
        s.palette = palette;
        const cui::Session before = s;
        cui::execute(cui::interpret(phrase), s, log);
        if (s == before) return fail(std::string("'") + phrase + "' changed nothing");
        cui::execute(cui::interpret(phrase), s, log);
        if (!(s == before)) return fail(std::string("'") + phrase + "' twice is not the identity");
      }
    }
  }
  return {true, fmt("%zu/%zu utterances; toggle twice restores the session", hits, corpus.size())};
}

// 8. Wall-clock pacing of a two-entry scenario at speed 2.
Result replay_timing() {
  const std::string text =
      R"({"name":"timing","epoch_ms":0})"
      "\n"
      R"({"offset_ms":0,"v":1,"type":"sensor_register","seq":1,"time_ms":0,"payload":{"id":"a","kind":"camera","owner":"UK","position":{"lat":1,"lon":1}}})"
      "\n"
      R"({"offset_ms":2000,"v":1,"type":"sensor_register","seq":2,"time_ms":2000,"payload":{"id":"b","kind":"camera","owner":"UK","position":{"lat":1,"lon":2}}})"
      "\n";
  auto load = gateway::load_scenario(text);
  if (!load.ok()) return fail(load.diagnostics[0].message);
  double worst = 0.0, sum = 0.0;
  const int runs = 3;
  for (int i = 0; i < runs; ++i) {
    gateway::GatewayConfig config;
    config.mode = gateway::ClockMode::replay;
    gateway::Gateway gw(rules::RuleSet{}, config);
    gateway::Replayer r(gw, *load.scenario, 2.0);
    std::vector<SteadyClock::time_point> at;
    r.on_deliver = [&](std::size_t) { at.push_back(SteadyClock::now()); };
    r.run();
    if (at.size() != 2) return fail("expected two deliveries");
    const double ms = std::chrono::duration<double, std::milli>(at[1] - at[0]).count();
    worst = std::max(worst, std::abs(ms - 1000.0));
    sum += ms;
  }
  return {worst <= 50.0, fmt("mean gap %.1f ms over %d runs, worst deviation %.1f ms (limit 50)", sum / runs, runs,
                             worst)};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::err);
  const std::vector<std::pair<const char*, std::function<Result()>>> checks{
      {"1 oracle agreement", oracle_agreement}, {"2 shooting golden scenario", shooting_golden},
      {"3 replay determinism", determinism},    {"4 rule DSL", rule_dsl},
      {"5 protocol conformance", protocol},     {"6 analytics conservation", conservation},
      {"7 CUI corpus and toggle", cui_corpus},  {"8 replay timing", replay_timing},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    Result r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = fail(std::string("exception: ") + e.what());
    }
    if (!r.pass) ++failed;
    std::printf("%s  %s: %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
