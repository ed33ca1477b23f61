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

// WebSocket transport: /ingest and /console on one port, text frames, one
// envelope per frame. Everything runs on the io_context's thread.

#pragma once

#include <boost/asio/io_context.hpp>
#include <functional>
#include <memory>
#include <string>

#include "sue/gateway/gateway.hpp"
#include "sue/gateway/replay.hpp"

namespace sue::gateway {

class Server {
 public:
  /// Binds immediately; port 0 picks a free port.
  Server(boost::asio::io_context& io, Gateway& gateway, unsigned short port, const std::string& address = "0.0.0.0");
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  [[nodiscard]] unsigned short port() const;
  void start();
  /// Stops accepting and closes every open session.
  void stop();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

/// Drives the replayer from io_context timers; `done` runs after the last
/// entry.
void start_replay(boost::asio::io_context& io, Replayer& replayer, std::function<void()> done = {});

/// Advances the gateway on every tick boundary of the wall clock.
void start_live_clock(boost::asio::io_context& io, Gateway& gateway);

/// Wall-clock milliseconds since the Unix epoch.
TimeMs wall_clock_ms();

}  // namespace sue::gateway
