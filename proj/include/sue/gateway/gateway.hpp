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

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "sue/analytics/analytics.hpp"
#include "sue/cep/engine.hpp"
#include "sue/core/model.hpp"
#include "sue/cui/cui.hpp"
#include "sue/gateway/envelope.hpp"

namespace sue::gateway {

enum class ClockMode { live, replay };

std::string_view to_string(ClockMode mode);

struct GatewayConfig {
  cep::EngineConfig engine;
  ClockMode mode = ClockMode::live;
  double speed = 1.0;  // replay only; informational
  std::size_t queue_capacity = 1024;
  std::optional<std::string> rules_path;  // reload_rules without a source reads this
};

/// /ingest carries producers, /console carries subscribers. `replay` is the
/// in-process producer that feeds a scenario; it alone may ingest in
/// replay mode.
enum class Endpoint { ingest, console, replay };

using ConnectionId = std::uint64_t;

struct ConnectionHooks {
  std::function<void()> on_ready;     // the outbox went from empty to non-empty
  std::function<void()> on_overflow;  // the outbox overflowed; the transport must close
};

/// Protocol core, independent of any transport. Every inbound envelope gets
/// exactly one ack or error on its own connection; engine output, sensor
/// registrations and accepted events fan out to every console connection in
/// production order.
///
/// Not thread-safe: the owner drives it from one thread (in the server, the
/// io_context thread), which is what serializes all producers into the
/// single engine queue.
class Gateway {
 public:
  Gateway(rules::RuleSet rules, GatewayConfig config);

  ConnectionId connect(Endpoint endpoint, ConnectionHooks hooks = {});
  void disconnect(ConnectionId id);
  [[nodiscard]] bool connected(ConnectionId id) const { return conns_.contains(id); }

  /// Handles one text frame.
  void receive(ConnectionId id, std::string_view text);
  /// Handles one parsed envelope, for in-process producers.
  void receive_parsed(ConnectionId id, const Json& envelope);

  /// Next outbound frame for the connection, if any. The transport pops one
  /// frame, writes it, then pops the next; frames not yet popped count
  /// towards the queue bound.
  std::optional<std::string> pop(ConnectionId id);
  [[nodiscard]] std::size_t pending(ConnectionId id) const;

  /// Moves the clock to `now` and processes every tick that has fully
  /// elapsed. Earlier times are ignored.
  void advance_to(TimeMs now);
  /// End of input: processes ticks up to the latest buffered event.
  void finish();

  [[nodiscard]] TimeMs position_ms() const { return position_ms_; }
  [[nodiscard]] const GatewayConfig& config() const { return config_; }
  [[nodiscard]] const cep::Engine& engine() const { return engine_; }
  [[nodiscard]] const analytics::RunLog& log() const { return log_; }
  [[nodiscard]] const SensorRegistry& registry() const { return registry_; }
  [[nodiscard]] std::size_t connection_count() const { return conns_.size(); }

 private:
  struct Connection {
    Endpoint endpoint = Endpoint::console;
    ConnectionHooks hooks;
    std::int64_t expected_seq = 1;
    std::int64_t next_out_seq = 1;
    std::deque<std::string> outbox;
    std::string session;
  };

  struct Reply {
    std::optional<Json> result;  // ack
    std::optional<EnvelopeError> error;
  };

  void handle(Connection& conn, ConnectionId id, const Json& j);
  Reply dispatch(Connection& conn, const Envelope& env);
  Reply on_sensor(const Envelope& env);
  Reply on_event(const Envelope& env);
  Reply on_ingest_control(const Envelope& env);
  Reply on_console_control(Connection& conn, const Envelope& env);
  Reply reload_rules(const Envelope& env);
  Json query(const Json& payload) const;
  Json snapshot(const Connection& conn) const;
  Json clock_payload() const;

  void send(ConnectionId id, EnvelopeType type, Json payload);
  void broadcast(EnvelopeType type, const Json& payload);
  void publish(const std::vector<cep::Emission>& emissions);
  void push(ConnectionId id, Connection& conn, std::string frame);

  GatewayConfig config_;
  cep::Engine engine_;
  SensorRegistry registry_;
  analytics::RunLog log_;
  std::map<std::string, cui::Session> sessions_;
  std::map<ConnectionId, Connection> conns_;
  ConnectionId next_id_ = 1;
  TimeMs position_ms_;
};

}  // namespace sue::gateway
