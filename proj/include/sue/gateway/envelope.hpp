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

// Wire envelope: {"v":1,"type":...,"seq":n,"time_ms":t,"payload":{...}},
// one per WebSocket text frame or scenario line.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sue/core/json.hpp"

namespace sue::gateway {

inline constexpr int kProtocolVersion = 1;

enum class EnvelopeType { sensor_register, simple_event, complex_event, proof_trace, control, ack, error, clock };

std::string_view to_string(EnvelopeType type);
std::optional<EnvelopeType> parse_envelope_type(std::string_view text);

struct Envelope {
  int v = kProtocolVersion;
  EnvelopeType type = EnvelopeType::control;
  std::int64_t seq = 0;
  TimeMs time_ms = 0;
  Json payload = Json::object();

  bool operator==(const Envelope&) const = default;
};

Json to_json(const Envelope& env);
std::string encode(const Envelope& env);

/// Error codes carried in error payloads.
namespace codes {
inline constexpr std::string_view malformed_json = "malformed_json";
inline constexpr std::string_view bad_envelope = "bad_envelope";
inline constexpr std::string_view unknown_type = "unknown_type";
inline constexpr std::string_view unsupported_type = "unsupported_type";
inline constexpr std::string_view seq_gap = "seq_gap";
inline constexpr std::string_view bad_payload = "bad_payload";
inline constexpr std::string_view invalid_sensor = "invalid_sensor";
inline constexpr std::string_view sensor_conflict = "sensor_conflict";
inline constexpr std::string_view invalid_event = "invalid_event";
inline constexpr std::string_view duplicate_event = "duplicate_event";
inline constexpr std::string_view late_event = "late_event";
inline constexpr std::string_view unknown_op = "unknown_op";
inline constexpr std::string_view bad_request = "bad_request";
inline constexpr std::string_view not_found = "not_found";
inline constexpr std::string_view mode_locked = "mode_locked";
inline constexpr std::string_view rules_rejected = "rules_rejected";
}  // namespace codes

/// A rejected inbound envelope. `seq` is absent when the sender's seq could
/// not be read.
struct EnvelopeError {
  std::optional<std::int64_t> seq;
  std::string code;
  std::vector<std::string> errors;
};

Json error_payload(const EnvelopeError& e);

/// Reads the header fields of an already-parsed envelope. The seq is
/// checked separately by the caller, so this only reports shape problems.
/// Throws EnvelopeErrorException.
Envelope decode_envelope(const Json& j);

class EnvelopeErrorException : public std::runtime_error {
 public:
  explicit EnvelopeErrorException(EnvelopeError e)
      : std::runtime_error(e.errors.empty() ? e.code : e.errors.front()), error_(std::move(e)) {}
  [[nodiscard]] const EnvelopeError& error() const { return error_; }

 private:
  EnvelopeError error_;
};

/// The seq field if it is an integer, else nothing.
std::optional<std::int64_t> peek_seq(const Json& j);

}  // namespace sue::gateway
