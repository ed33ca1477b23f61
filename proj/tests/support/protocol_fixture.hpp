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

#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sue/gateway/gateway.hpp"
#include "sue/rules/rule_set.hpp"

namespace sue::testing_support {

// True when every key of `expected` is present in `actual` with a matching
// value. Objects match recursively; arrays and scalars match exactly.
inline bool json_subset(const Json& expected, const Json& actual) {
  if (!expected.is_object()) return expected == actual;
  if (!actual.is_object()) return false;
  for (const auto& [key, value] : expected.items()) {
    auto it = actual.find(key);
    if (it == actual.end() || !json_subset(value, *it)) return false;
  }
  return true;
}

inline rules::RuleSet shooting_rules() {
  auto parsed = rules::parse_rules(
      "fluent shooting\n"
      "initiate shooting when gunshot and weapon_sighting within 30s, 150m\n"
      "terminate shooting when all_clear\n");
  if (!parsed.ok()) throw std::logic_error("shooting rules do not parse");
  return *parsed.rules;
}

// A fixture is {"endpoint": "ingest", "steps": [{"send": envelope or raw
// text, "expect": subset of the reply}]}. Each step must produce exactly one
// reply frame on the sending connection. Returns one message per failure.
inline std::vector<std::string> run_protocol_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) return {"cannot open " + path};
  std::stringstream text;
  text << in.rdbuf();
  const Json fixture = Json::parse(text.str());

  gateway::GatewayConfig config;
  config.engine.clock.epoch_ms = 1767225600000;
  gateway::Gateway gw(shooting_rules(), config);
  const auto endpoint = fixture.value("endpoint", "ingest") == "console" ? gateway::Endpoint::console
                                                                         : gateway::Endpoint::ingest;
  const auto conn = gw.connect(endpoint);

  std::vector<std::string> failures;
  int step = 0;
  for (const auto& s : fixture.at("steps")) {
    ++step;
    const Json& send = s.at("send");
    gw.receive(conn, send.is_string() ? send.get<std::string>() : send.dump());
    std::vector<Json> replies;
    while (auto frame = gw.pop(conn)) replies.push_back(Json::parse(*frame));
    const std::string where = path + " step " + std::to_string(step) + ": ";
    if (!gw.connected(conn)) {
      failures.push_back(where + "connection closed");
      break;
    }
    if (replies.size() != 1) {
      failures.push_back(where + "expected one reply, got " + std::to_string(replies.size()));
      continue;
    }
    const std::string type = replies[0].value("type", "");
    if (type != "ack" && type != "error") failures.push_back(where + "reply is neither ack nor error");
    if (!json_subset(s.at("expect"), replies[0])) {
      failures.push_back(where + "got " + replies[0].dump() + ", expected " + s.at("expect").dump());
    }
  }
  return failures;
}

}  // namespace sue::testing_support
