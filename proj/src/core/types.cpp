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

#include "sue/core/types.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "sue/core/error.hpp"

namespace sue {

namespace {

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::pair<std::string_view, Enum>, N>& table,
                           std::string_view text) {
  for (const auto& [name, value] : table) {
    if (name == text) return value;
  }
  return std::nullopt;
}

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<std::string_view, Enum>, N>& table,
                         Enum value) {
  for (const auto& [name, v] : table) {
    if (v == value) return name;
  }
  return "unknown";
}

constexpr std::array<std::pair<std::string_view, SensorKindTag>, 3> kSensorKinds{{
    {"camera", SensorKindTag::camera},
    {"microphone", SensorKindTag::microphone},
    {"other", SensorKindTag::other},
}};

constexpr std::array<std::pair<std::string_view, Modality>, 4> kModalities{{
    {"video", Modality::video},
    {"audio", Modality::audio},
    {"multimodal", Modality::multimodal},
    {"other", Modality::other},
}};

constexpr std::array<std::pair<std::string_view, RuleKind>, 2> kRuleKinds{{
    {"initiates", RuleKind::initiates},
    {"terminates", RuleKind::terminates},
}};

constexpr std::array<std::pair<std::string_view, BeliefLevel>, 4> kBeliefLevels{{
    {"not_significant", BeliefLevel::not_significant},
    {"weak", BeliefLevel::weak},
    {"medium", BeliefLevel::medium},
    {"strong", BeliefLevel::strong},
}};

constexpr std::array<std::pair<std::string_view, Palette>, 2> kPalettes{{
    {"default", Palette::standard},
    {"accessible", Palette::accessible},
}};

}  // namespace

bool GeoPoint::is_valid() const {
  return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0 &&
         lon >= -180.0 && lon <= 180.0;
}

PartnerId::PartnerId(std::string code) : code_(std::move(code)) {
  if (!is_valid(code_)) {
    throw ValidationError("invalid partner id '" + code_ + "' (expected [A-Z]{2,8})");
  }
}

bool PartnerId::is_valid(std::string_view code) {
  if (code.size() < 2 || code.size() > 8) return false;
  for (char c : code) {
    if (c < 'A' || c > 'Z') return false;
  }
  return true;
}

std::string ProofTrace::id() const { return fluent + "@" + std::to_string(tick); }

void BeliefThresholds::validate() const {
  if (!(weak > 0.0 && weak < medium && medium < strong && strong <= 1.0)) {
    throw ValidationError("belief thresholds must satisfy 0 < weak < medium < strong <= 1");
  }
}

std::string_view to_string(SensorKindTag tag) { return name_of(kSensorKinds, tag); }
std::string_view to_string(Modality modality) { return name_of(kModalities, modality); }
std::string_view to_string(RuleKind kind) { return name_of(kRuleKinds, kind); }
std::string_view to_string(BeliefLevel level) { return name_of(kBeliefLevels, level); }
std::string_view to_string(Palette palette) { return name_of(kPalettes, palette); }

std::optional<SensorKindTag> parse_sensor_kind(std::string_view text) {
  return lookup(kSensorKinds, text);
}
std::optional<Modality> parse_modality(std::string_view text) { return lookup(kModalities, text); }
std::optional<RuleKind> parse_rule_kind(std::string_view text) { return lookup(kRuleKinds, text); }
std::optional<BeliefLevel> parse_belief_level(std::string_view text) {
  return lookup(kBeliefLevels, text);
}
std::optional<Palette> parse_palette(std::string_view text) { return lookup(kPalettes, text); }

}  // namespace sue
