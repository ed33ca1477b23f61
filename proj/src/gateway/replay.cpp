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

#include "sue/gateway/replay.hpp"

#include <spdlog/spdlog.h>

#include <thread>

#include "sue/core/error.hpp"

namespace sue::gateway {

Replayer::Replayer(Gateway& gateway, const Scenario& scenario, std::optional<double> speed)
    : gateway_(gateway), scenario_(scenario), speed_(speed), conn_(gateway.connect(Endpoint::replay)) {
  if (speed_ && !(*speed_ > 0.0)) throw ValidationError("replay speed must be positive");
}

Replayer::Clock::time_point Replayer::due(Clock::time_point start) const {
  if (!speed_ || done()) return start;
  const double ms = static_cast<double>(scenario_.entries[next_].offset_ms) / *speed_;
  return start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double, std::milli>(ms));
}

void Replayer::deliver_next() {
  if (done()) return;
  const ScenarioEntry& entry = scenario_.entries[next_];
  gateway_.advance_to(scenario_.epoch_ms + entry.offset_ms);
  gateway_.receive_parsed(conn_, to_json(entry.envelope));
  while (auto frame = gateway_.pop(conn_)) {
    const Json reply = Json::parse(*frame);
    if (reply["type"] == "error") spdlog::warn("scenario line {}: {}", entry.line, reply["payload"].dump());
  }
  const std::size_t index = next_++;
  if (done()) gateway_.finish();
  if (on_deliver) on_deliver(index);
}

void Replayer::run() {
  const auto start = Clock::now();
  while (!done()) {
    std::this_thread::sleep_until(due(start));
    deliver_next();
  }
}

}  // namespace sue::gateway
