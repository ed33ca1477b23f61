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

#include <optional>
#include <string>
#include <vector>

#include "sue/gateway/replay.hpp"

namespace sue::testing_support {

struct Capture {
  std::vector<std::string> frames;     // every console frame, verbatim
  std::vector<std::string> reasoning;  // complex_event and proof_trace frames only
};

// Replays `scenario` into a fresh gateway and records what a console sees.
inline Capture replay_capture(const rules::RuleSet& rules, const gateway::Scenario& scenario,
                              std::optional<double> speed) {
  gateway::GatewayConfig config;
  config.engine.clock.epoch_ms = scenario.epoch_ms;
  config.mode = gateway::ClockMode::replay;
  config.speed = speed.value_or(0.0);
  gateway::Gateway gw(rules, config);
  const auto console = gw.connect(gateway::Endpoint::console);

  Capture cap;
  auto drain = [&] {
    while (auto frame = gw.pop(console)) {
      const std::string type = Json::parse(*frame).at("type").get<std::string>();
      if (type == "complex_event" || type == "proof_trace") cap.reasoning.push_back(*frame);
      cap.frames.push_back(std::move(*frame));
    }
  };
  gateway::Replayer replayer(gw, scenario, speed);
  replayer.on_deliver = [&](std::size_t) { drain(); };
  replayer.run();
  drain();
  return cap;
}

}  // namespace sue::testing_support
