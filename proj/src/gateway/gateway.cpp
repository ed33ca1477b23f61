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

#include "sue/gateway/gateway.hpp"

#include <spdlog/spdlog.h>

#include "sue/core/error.hpp"

namespace sue::gateway {

std::string_view to_string(ClockMode mode) { return mode == ClockMode::live ? "live" : "replay"; }

namespace {

EnvelopeError error(std::int64_t seq, std::string_view code, std::vector<std::string> errors) {
  return EnvelopeError{seq, std::string(code), std::move(errors)};
}

std::string string_field(const Json& payload, const char* key) {
  auto it = payload.find(key);
  if (it == payload.end() || !it->is_string()) throw DecodeError(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

}  // namespace

Gateway::Gateway(rules::RuleSet rules, GatewayConfig config)
    : config_(std::move(config)),
      engine_(std::move(rules), config_.engine),
      log_(config_.engine.thresholds),
      position_ms_(config_.engine.clock.epoch_ms) {}

ConnectionId Gateway::connect(Endpoint endpoint, ConnectionHooks hooks) {
  const ConnectionId id = next_id_++;
  Connection conn;
  conn.endpoint = endpoint;
  conn.hooks = std::move(hooks);
  if (endpoint == Endpoint::console) {
    conn.session = "conn-" + std::to_string(id);
    sessions_.try_emplace(conn.session);
  }
  conns_.emplace(id, std::move(conn));
  return id;
}

void Gateway::disconnect(ConnectionId id) {
  auto it = conns_.find(id);
  if (it == conns_.end()) return;
  if (it->second.session == "conn-" + std::to_string(id)) sessions_.erase(it->second.session);
  conns_.erase(it);
}

std::optional<std::string> Gateway::pop(ConnectionId id) {
  auto it = conns_.find(id);
  if (it == conns_.end() || it->second.outbox.empty()) return std::nullopt;
  std::string frame = std::move(it->second.outbox.front());
  it->second.outbox.pop_front();
  return frame;
}

std::size_t Gateway::pending(ConnectionId id) const {
  auto it = conns_.find(id);
  return it == conns_.end() ? 0 : it->second.outbox.size();
}

void Gateway::push(ConnectionId id, Connection& conn, std::string frame) {
  if (conn.outbox.size() >= config_.queue_capacity) {
    spdlog::warn("connection {} fell {} frames behind; disconnecting", id, conn.outbox.size());
    auto hook = std::move(conn.hooks.on_overflow);
    disconnect(id);
    if (hook) hook();
    return;
  }
  const bool was_empty = conn.outbox.empty();
  conn.outbox.push_back(std::move(frame));
  if (was_empty && conn.hooks.on_ready) conn.hooks.on_ready();
}

void Gateway::send(ConnectionId id, EnvelopeType type, Json payload) {
  auto it = conns_.find(id);
  if (it == conns_.end()) return;
  Envelope env{kProtocolVersion, type, it->second.next_out_seq++, position_ms_, std::move(payload)};
  push(id, it->second, encode(env));
}

void Gateway::broadcast(EnvelopeType type, const Json& payload) {
  // Collect first: an overflowing subscriber is removed mid-loop.
  std::vector<ConnectionId> targets;
  for (const auto& [id, conn] : conns_) {
    if (conn.endpoint == Endpoint::console) targets.push_back(id);
  }
  Json env = to_json(Envelope{kProtocolVersion, type, 0, position_ms_, payload});
  for (ConnectionId id : targets) {
    auto it = conns_.find(id);
    if (it == conns_.end()) continue;
    env["seq"] = it->second.next_out_seq++;
    push(id, it->second, env.dump());
  }
}

void Gateway::publish(const std::vector<cep::Emission>& emissions) {
  for (const auto& em : emissions) {
    if (const auto* trace = std::get_if<ProofTrace>(&em)) {
      log_.record(*trace);
      broadcast(EnvelopeType::proof_trace, *trace);
    } else {
      const auto& ce = std::get<ComplexEvent>(em);
      log_.record(ce);
      broadcast(EnvelopeType::complex_event, ce);
    }
  }
}

void Gateway::receive(ConnectionId id, std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    send(id, EnvelopeType::error,
         error_payload(EnvelopeError{std::nullopt, std::string(codes::malformed_json), {e.what()}}));
    return;
  }
  receive_parsed(id, j);
}

void Gateway::receive_parsed(ConnectionId id, const Json& j) {
  auto it = conns_.find(id);
  if (it == conns_.end()) return;
  handle(it->second, id, j);
}

void Gateway::handle(Connection& conn, ConnectionId id, const Json& j) {
  const auto seq = peek_seq(j);
  if (seq && *seq != conn.expected_seq) {
    // A gap does not consume the expected seq, so the sender can resend.
    Json payload = error_payload(
        error(*seq, codes::seq_gap, {"expected seq " + std::to_string(conn.expected_seq)}));
    payload["expected"] = conn.expected_seq;
    send(id, EnvelopeType::error, std::move(payload));
    return;
  }
  Envelope env;
  try {
    env = decode_envelope(j);
  } catch (const EnvelopeErrorException& e) {
    if (seq) ++conn.expected_seq;
    send(id, EnvelopeType::error, error_payload(e.error()));
    return;
  }
  ++conn.expected_seq;

  Reply reply;
  try {
    reply = dispatch(conn, env);
  } catch (const DecodeError& e) {
    reply.error = error(env.seq, codes::bad_request, {e.what()});
  } catch (const ValidationError& e) {
    reply.error = error(env.seq, codes::bad_request, {e.what()});
  } catch (const NotFoundError& e) {
    reply.error = error(env.seq, codes::not_found, {e.what()});
  }
  // dispatch may have dropped this very connection through overflow.
  if (!conns_.contains(id)) return;
  if (reply.error) {
    send(id, EnvelopeType::error, error_payload(*reply.error));
  } else {
    Json ack{{"seq", env.seq}};
    if (reply.result) ack["result"] = std::move(*reply.result);
    send(id, EnvelopeType::ack, std::move(ack));
  }
}

Gateway::Reply Gateway::dispatch(Connection& conn, const Envelope& env) {
  const bool producer = conn.endpoint != Endpoint::console;
  switch (env.type) {
    case EnvelopeType::sensor_register:
    case EnvelopeType::simple_event:
      if (!producer) break;
      if (conn.endpoint == Endpoint::ingest && config_.mode == ClockMode::replay) {
        return {std::nullopt, error(env.seq, codes::mode_locked, {"live ingestion is disabled during replay"})};
      }
      return env.type == EnvelopeType::sensor_register ? on_sensor(env) : on_event(env);
    case EnvelopeType::control:
      return producer ? on_ingest_control(env) : on_console_control(conn, env);
    default:
      break;
  }
  return {std::nullopt,
          error(env.seq, codes::unsupported_type,
                {"'" + std::string(to_string(env.type)) + "' is not accepted on this endpoint"})};
}

Gateway::Reply Gateway::on_sensor(const Envelope& env) {
  Sensor sensor;
  try {
    sensor = decode<Sensor>(env.payload);
  } catch (const std::exception& e) {
    return {std::nullopt, error(env.seq, codes::bad_payload, {e.what()})};
  }
  std::vector<std::string> errors;
  for (const auto& v : validate_sensor(sensor)) errors.push_back(v.message);
  if (!errors.empty()) return {std::nullopt, error(env.seq, codes::invalid_sensor, std::move(errors))};

  switch (registry_.add(sensor)) {
    case SensorRegistry::AddResult::conflict:
      return {std::nullopt, error(env.seq, codes::sensor_conflict, {"sensor '" + sensor.id + "' already registered"})};
    case SensorRegistry::AddResult::unchanged:
      return {Json{{"status", "unchanged"}}, std::nullopt};
    case SensorRegistry::AddResult::added:
      break;
  }
  log_.record(sensor);
  broadcast(EnvelopeType::sensor_register, sensor);
  return {Json{{"status", "added"}}, std::nullopt};
}

Gateway::Reply Gateway::on_event(const Envelope& env) {
  SimpleEvent event;
  try {
    event = decode<SimpleEvent>(env.payload);
  } catch (const std::exception& e) {
    return {std::nullopt, error(env.seq, codes::bad_payload, {e.what()})};
  }
  std::vector<std::string> errors;
  for (const auto& v : validate_event(event, registry_)) errors.push_back(v.message);
  if (!errors.empty()) return {std::nullopt, error(env.seq, codes::invalid_event, std::move(errors))};

  const cep::SubmitResult r = engine_.submit(event);
  switch (r.status) {
    case cep::SubmitStatus::duplicate:
      return {std::nullopt, error(env.seq, codes::duplicate_event, {r.message})};
    case cep::SubmitStatus::late:
      return {std::nullopt, error(env.seq, codes::late_event, {r.message})};
    case cep::SubmitStatus::accepted:
      break;
  }
  log_.record(event);
  broadcast(EnvelopeType::simple_event, event);
  return {};
}

Json Gateway::clock_payload() const {
  return Json{{"mode", to_string(config_.mode)},
              {"speed", config_.speed},
              {"position_ms", position_ms_},
              {"epoch_ms", config_.engine.clock.epoch_ms},
              {"tick_ms", config_.engine.clock.width_ms},
              {"next_tick", engine_.next_tick()}};
}

Gateway::Reply Gateway::on_ingest_control(const Envelope& env) {
  const std::string op = string_field(env.payload, "op");
  if (op == "reload_rules") return reload_rules(env);
  if (op == "clock") return {clock_payload(), std::nullopt};
  if (op == "set_mode") {
    const std::string mode = string_field(env.payload, "mode");
    if (mode != "live" && mode != "replay") throw ValidationError("unknown mode '" + mode + "'");
    if (mode != to_string(config_.mode)) {
      return {std::nullopt, error(env.seq, codes::mode_locked,
                                  {"cannot switch to " + mode + " during a " +
                                   std::string(to_string(config_.mode)) + " run"})};
    }
    return {Json{{"mode", mode}}, std::nullopt};
  }
  return {std::nullopt, error(env.seq, codes::unknown_op, {"unknown control op '" + op + "'"})};
}

Gateway::Reply Gateway::reload_rules(const Envelope& env) {
  rules::ParseResult parsed;
  if (auto src = env.payload.find("source"); src != env.payload.end()) {
    if (!src->is_string()) throw DecodeError("field 'source' must be a string");
    parsed = rules::parse_rules(src->get<std::string>());
  } else {
    std::optional<std::string> path = config_.rules_path;
    if (auto p = env.payload.find("path"); p != env.payload.end()) {
      if (!p->is_string()) throw DecodeError("field 'path' must be a string");
      path = p->get<std::string>();
    }
    if (!path) throw ValidationError("reload_rules needs 'source' or 'path'");
    try {
      parsed.rules = rules::load_rules_file(*path);
    } catch (const rules::RuleParseError& e) {
      parsed.diagnostics = e.diagnostics();
    } catch (const std::runtime_error& e) {
      return {std::nullopt, error(env.seq, codes::rules_rejected, {e.what()})};
    }
  }
  if (!parsed.ok()) {
    std::vector<std::string> errors;
    for (const auto& d : parsed.diagnostics) errors.push_back(d.to_string());
    return {std::nullopt, error(env.seq, codes::rules_rejected, std::move(errors))};
  }
  publish(engine_.reload(std::move(*parsed.rules)));
  spdlog::info("rules reloaded: {} fluents, {} rules", engine_.rules().fluents.size(), engine_.rules().rules.size());
  return {Json{{"fluents", engine_.rules().fluents}, {"rules", engine_.rules().rules.size()}}, std::nullopt};
}

Json Gateway::query(const Json& payload) const {
  const std::string kind = string_field(payload, "query");
  const auto range = [&] {
    auto it = payload.find("range");
    return it == payload.end() ? analytics::run_extent(log_) : analytics::range_from_json(*it);
  };
  if (kind == "summary") {
    const auto r = range();
    return Json{{"query", kind}, {"range", {{"t0", r.t0}, {"t1", r.t1}}}, {"summary", analytics::summary(log_, r)}};
  }
  if (kind == "timeline") {
    auto w = payload.find("bucket_ms");
    if (w == payload.end() || !w->is_number_integer()) throw DecodeError("missing integer field 'bucket_ms'");
    const auto r = range();
    return Json{{"query", kind},
                {"range", {{"t0", r.t0}, {"t1", r.t1}}},
                {"buckets", analytics::timeline(log_, r, w->get<TimeMs>())}};
  }
  if (kind == "event_detail") {
    return Json{{"query", kind}, {"detail", analytics::event_detail(log_, string_field(payload, "id"))}};
  }
  throw ValidationError("unknown query '" + kind + "'");
}

Json Gateway::snapshot(const Connection& conn) const {
  Json complex = Json::array();
  for (const ComplexEvent* ce : log_.complex_events()) complex.push_back(*ce);
  return Json{{"session", conn.session},
              {"state", sessions_.at(conn.session)},
              {"sensors", log_.sensors()},
              {"events", log_.simple_events()},
              {"complex_events", std::move(complex)},
              {"active", engine_.snapshot().active},
              {"clock", clock_payload()},
              {"fluents", engine_.rules().fluents}};
}

Gateway::Reply Gateway::on_console_control(Connection& conn, const Envelope& env) {
  const std::string op = string_field(env.payload, "op");
  cui::Session& session = sessions_.at(conn.session);
  if (op == "query") return {query(env.payload), std::nullopt};
  if (op == "cui") {
    const cui::Intent intent = cui::interpret(string_field(env.payload, "utterance"));
    const cui::Outcome out = cui::execute(intent, session, log_);
    return {Json{{"intent", intent}, {"reply", out.reply}, {"directive", out.directive}, {"session", session}},
            std::nullopt};
  }
  if (op == "apply") {
    auto d = env.payload.find("directive");
    if (d == env.payload.end()) throw DecodeError("missing field 'directive'");
    cui::apply(cui::directive_from_json(*d), session, log_);
    return {Json{{"session", session}}, std::nullopt};
  }
  if (op == "hello") {
    if (auto name = env.payload.find("session"); name != env.payload.end()) {
      if (!name->is_string() || name->get<std::string>().empty()) throw DecodeError("'session' must be a name");
      conn.session = name->get<std::string>();
      sessions_.try_emplace(conn.session);
    }
    return {Json{{"session", conn.session}, {"state", sessions_.at(conn.session)}}, std::nullopt};
  }
  if (op == "snapshot") return {snapshot(conn), std::nullopt};
  if (op == "clock") return {clock_payload(), std::nullopt};
  return {std::nullopt, error(env.seq, codes::unknown_op, {"unknown control op '" + op + "'"})};
}

void Gateway::advance_to(TimeMs now) {
  if (now > position_ms_) position_ms_ = now;
  const std::int64_t target = config_.engine.clock.index_of(position_ms_) - 1;
  if (target < engine_.next_tick()) return;
  publish(engine_.advance(target));
  broadcast(EnvelopeType::clock, clock_payload());
}

void Gateway::finish() {
  const auto last = engine_.last_event_tick();
  if (!last || *last < engine_.next_tick()) return;
  position_ms_ = std::max(position_ms_, config_.engine.clock.start_of(*last + 1));
  publish(engine_.advance(*last));
  broadcast(EnvelopeType::clock, clock_payload());
}

}  // namespace sue::gateway
