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

#include <chrono>
#include <functional>
#include <optional>

#include "sue/gateway/gateway.hpp"
#include "sue/gateway/scenario.hpp"

namespace sue::gateway {

/// Feeds a scenario into a gateway through an in-process producer. Entry i
/// is due at start + offset_i / speed of wall time and carries virtual time
/// epoch + offset_i; the engine sees only virtual time, so its output does
/// not depend on the speed. No speed means as fast as possible.
class Replayer {
 public:
  using Clock = std::chrono::steady_clock;

  Replayer(Gateway& gateway, const Scenario& scenario, std::optional<double> speed);

  [[nodiscard]] std::size_t size() const { return scenario_.entries.size(); }
  [[nodiscard]] bool done() const { return next_ >= size(); }
  /// Wall-clock due time of the next entry, given the run's start.
  [[nodiscard]] Clock::time_point due(Clock::time_point start) const;

  /// Delivers the next entry. After the last one the gateway is flushed.
  void deliver_next();

  /// Blocking loop: sleeps until each entry is due, then delivers it.
  void run();

  /// Called after each delivery with the entry index.
  std::function<void(std::size_t)> on_deliver;

 private:
  Gateway& gateway_;
  const Scenario& scenario_;
  std::optional<double> speed_;
  ConnectionId conn_;
  std::size_t next_ = 0;
};

}  // namespace sue::gateway
