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

#include "sue/gateway/envelope.hpp"

#include <array>
#include <utility>

namespace sue::gateway {

namespace {

constexpr std::array<std::pair<EnvelopeType, std::string_view>, 8> kTypes{{
    {EnvelopeType::sensor_register, "sensor_register"},
    {EnvelopeType::simple_event, "simple_event"},
    {EnvelopeType::complex_event, "complex_event"},
    {EnvelopeType::proof_trace, "proof_trace"},
    {EnvelopeType::control, "control"},
    {EnvelopeType::ack, "ack"},
    {EnvelopeType::error, "error"},
    {EnvelopeType::clock, "clock"},
}};

[[noreturn]] void reject(std::optional<std::int64_t> seq, std::string_view code, std::string message) {
  throw EnvelopeErrorException(EnvelopeError{seq, std::string(code), {std::move(message)}});
}

}  // namespace

std::string_view to_string(EnvelopeType type) {
  for (const auto& [t, name] : kTypes) {
    if (t == type) return name;
  }
  return "unknown";
}

std::optional<EnvelopeType> parse_envelope_type(std::string_view text) {
  for (const auto& [t, name] : kTypes) {
    if (name == text) return t;
  }
  return std::nullopt;
}

Json to_json(const Envelope& env) {
  return Json{{"v", env.v}, {"type", to_string(env.type)}, {"seq", env.seq}, {"time_ms", env.time_ms},
              {"payload", env.payload}};
}

std::string encode(const Envelope& env) { return to_json(env).dump(); }

Json error_payload(const EnvelopeError& e) {
  return Json{{"seq", e.seq ? Json(*e.seq) : Json(nullptr)}, {"code", e.code}, {"errors", e.errors}};
}

std::optional<std::int64_t> peek_seq(const Json& j) {
  if (!j.is_object()) return std::nullopt;
  auto it = j.find("seq");
  if (it == j.end() || !it->is_number_integer()) return std::nullopt;
  return it->get<std::int64_t>();
}

Envelope decode_envelope(const Json& j) {
  const auto seq = peek_seq(j);
  if (!j.is_object()) reject(seq, codes::bad_envelope, "envelope must be a JSON object");
  if (!seq) reject(seq, codes::bad_envelope, "missing integer field 'seq'");

  Envelope env;
  env.seq = *seq;
  auto v = j.find("v");
  if (v == j.end() || !v->is_number_integer()) reject(seq, codes::bad_envelope, "missing integer field 'v'");
  if (v->get<std::int64_t>() != kProtocolVersion) {
    reject(seq, codes::bad_envelope, "unsupported protocol version " + v->dump());
  }
  auto type = j.find("type");
  if (type == j.end() || !type->is_string()) reject(seq, codes::bad_envelope, "missing string field 'type'");
  const auto parsed = parse_envelope_type(type->get<std::string>());
  if (!parsed) reject(seq, codes::unknown_type, "unknown envelope type '" + type->get<std::string>() + "'");
  env.type = *parsed;
  auto time = j.find("time_ms");
  if (time == j.end() || !time->is_number_integer()) {
    reject(seq, codes::bad_envelope, "missing integer field 'time_ms'");
  }
  env.time_ms = time->get<TimeMs>();
  auto payload = j.find("payload");
  if (payload == j.end() || !payload->is_object()) reject(seq, codes::bad_envelope, "missing object field 'payload'");
  env.payload = *payload;
  return env;
}

}  // namespace sue::gateway
