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

// Value types shared by every module. All of them are plain immutable-by-
// convention aggregates: copy them freely across threads.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace sue {

/// Milliseconds since the Unix epoch (or since a scenario epoch).
using TimeMs = std::int64_t;

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  /// Finite and within [-90, 90] x [-180, 180].
  [[nodiscard]] bool is_valid() const;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

/// Coalition partner code such as "US" or "UK": [A-Z]{2,8}.
class PartnerId {
 public:
  PartnerId() = default;
  /// Throws ValidationError when `code` is not [A-Z]{2,8}.
  explicit PartnerId(std::string code);

  [[nodiscard]] static bool is_valid(std::string_view code);
  [[nodiscard]] const std::string& code() const { return code_; }

  friend bool operator==(const PartnerId&, const PartnerId&) = default;
  friend auto operator<=>(const PartnerId&, const PartnerId&) = default;

 private:
  std::string code_;
};

enum class SensorKindTag { camera, microphone, other };

struct SensorKind {
  SensorKindTag tag = SensorKindTag::other;
  std::string other_label;  // only meaningful for `other`

  friend bool operator==(const SensorKind&, const SensorKind&) = default;
};

struct Sensor {
  std::string id;
  SensorKind kind;
  PartnerId owner;
  GeoPoint position;
  std::string label;

  friend bool operator==(const Sensor&, const Sensor&) = default;
};

enum class Modality { video, audio, multimodal, other };

struct Uncertainty {
  double aleatoric = 0.0;
  double epistemic = 0.0;

  friend bool operator==(const Uncertainty&, const Uncertainty&) = default;
};

struct SaliencyFrame {
  TimeMs time_offset_ms = 0;
  std::string original_ref;
  std::string saliency_ref;

  friend bool operator==(const SaliencyFrame&, const SaliencyFrame&) = default;
};

struct RelevancePoint {
  TimeMs time_offset_ms = 0;
  double score = 0.0;

  friend bool operator==(const RelevancePoint&, const RelevancePoint&) = default;
};

/// Explanation produced by an external detector. Media travel as opaque
/// URIs, never inline bytes.
struct SaliencyExplanation {
  Modality dominant_modality = Modality::video;  // video or audio
  std::map<Modality, double> modality_scores;
  std::vector<SaliencyFrame> frames;
  std::vector<RelevancePoint> temporal_relevance;

  friend bool operator==(const SaliencyExplanation&, const SaliencyExplanation&) = default;
};

enum class RuleKind { initiates, terminates };

struct FiredGrounding {
  RuleKind kind = RuleKind::initiates;
  std::string rule_text;
  std::vector<std::string> event_ids;
  double occurrence_prob = 0.0;

  friend bool operator==(const FiredGrounding&, const FiredGrounding&) = default;
};

/// Symbolic record of one fluent update. `prob_after` is always
/// update_probability(prob_before, init_prob, term_prob).
struct ProofTrace {
  std::string fluent;
  std::int64_t tick = 0;
  std::vector<FiredGrounding> fired_groundings;
  double prob_before = 0.0;
  double init_prob = 0.0;
  double term_prob = 0.0;
  double prob_after = 0.0;

  /// Stable reference "<fluent>@<tick>".
  [[nodiscard]] std::string id() const;

  friend bool operator==(const ProofTrace&, const ProofTrace&) = default;
};

using ExplanationPayload = std::variant<SaliencyExplanation, ProofTrace>;

struct SimpleEvent {
  std::string id;
  std::string event_type;
  std::string sensor_id;
  TimeMs time = 0;
  GeoPoint position;
  double region_radius_m = 0.0;
  double confidence = 0.0;
  Modality modality = Modality::other;
  std::optional<Uncertainty> uncertainty;
  std::optional<ExplanationPayload> explanation;

  friend bool operator==(const SimpleEvent&, const SimpleEvent&) = default;
};

/// Ordered: not_significant < weak < medium < strong.
enum class BeliefLevel { not_significant = 0, weak = 1, medium = 2, strong = 3 };

enum class Palette { standard, accessible };

struct BeliefThresholds {
  double strong = 0.8;
  double medium = 0.5;
  double weak = 0.2;

  /// Throws ValidationError unless 0 < weak < medium < strong <= 1.
  void validate() const;

  friend bool operator==(const BeliefThresholds&, const BeliefThresholds&) = default;
};

struct ProbabilityPoint {
  TimeMs time_ms = 0;
  double probability = 0.0;

  friend bool operator==(const ProbabilityPoint&, const ProbabilityPoint&) = default;
};

struct ComplexEvent {
  std::string id;
  std::string fluent;
  double probability = 0.0;
  BeliefLevel belief = BeliefLevel::not_significant;
  TimeMs active_since = 0;
  TimeMs last_update = 0;
  std::vector<std::string> constituents;
  GeoPoint centroid;
  double radius_m = 0.0;
  std::string trace;  // ProofTrace::id() of the latest fired update
  std::vector<ProbabilityPoint> history;

  friend bool operator==(const ComplexEvent&, const ComplexEvent&) = default;
};

// Lowercase wire names for enums. The parsers return nullopt on unknown text.
std::string_view to_string(SensorKindTag tag);
std::string_view to_string(Modality modality);
std::string_view to_string(RuleKind kind);
std::string_view to_string(BeliefLevel level);
std::string_view to_string(Palette palette);
std::optional<SensorKindTag> parse_sensor_kind(std::string_view text);
std::optional<Modality> parse_modality(std::string_view text);
std::optional<RuleKind> parse_rule_kind(std::string_view text);
std::optional<BeliefLevel> parse_belief_level(std::string_view text);
std::optional<Palette> parse_palette(std::string_view text);

}  // namespace sue
