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

#include <random>

#include "rule_gen.hpp"
#include "sue/analytics/analytics.hpp"
#include "sue/cep/engine.hpp"

namespace sue::testing_support {

/// A run log filled by pushing a random event stream through the engine,
/// so it holds simple and complex events alike.
inline analytics::RunLog random_run(std::mt19937_64& rng, TimeMs epoch = 1'000'000) {
  static constexpr std::array<const char*, 4> kOwners{"UK", "USA", "FR", "DE"};
  analytics::RunLog log;
  const int sensors = uniform_int(rng, 1, 4);
  for (int i = 0; i < sensors; ++i) {
    Sensor s;
    s.id = "s-" + std::to_string(i);
    s.kind.tag = static_cast<SensorKindTag>(uniform_int(rng, 0, 1));
    s.owner = PartnerId(kOwners[uniform_int(rng, 0, kOwners.size() - 1)]);
    s.position = {51.48, -3.18};
    log.record(s);
  }

  auto scenario = random_reasoning_scenario(rng, 40);
  cep::Engine engine(scenario.rules, cep::EngineConfig{cep::TickClock{epoch, 1000}, {}});
  for (auto& e : scenario.events) {
    e.time += epoch;
    e.sensor_id = "s-" + std::to_string(uniform_int(rng, 0, sensors - 1));
    if (engine.submit(e).accepted()) log.record(e);
  }
  for (const auto& em : engine.advance(scenario.last_tick)) {
    std::visit([&](const auto& v) { log.record(v); }, em);
  }
  return log;
}

}  // namespace sue::testing_support
