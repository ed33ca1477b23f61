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

#include "sue/core/json.hpp"

#include <string>

#include "sue/core/error.hpp"

namespace sue {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw DecodeError(std::string("expected object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw DecodeError(std::string("missing field '") + key + "'");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) throw DecodeError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw DecodeError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw DecodeError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

const Json& array(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) throw DecodeError(std::string("field '") + key + "' must be an array");
  return v;
}

template <typename Enum, typename Parse>
Enum enum_field(const Json& j, const char* key, Parse parse) {
  const std::string s = text(j, key);
  auto parsed = parse(s);
  if (!parsed) throw DecodeError(std::string("field '") + key + "' has unknown value '" + s + "'");
  return *parsed;
}

template <typename T>
std::vector<T> list_of(const Json& j, const char* key) {
  std::vector<T> out;
  for (const auto& item : array(j, key)) out.push_back(decode<T>(item));
  return out;
}

}  // namespace

void to_json(Json& j, const GeoPoint& v) { j = Json{{"lat", v.lat}, {"lon", v.lon}}; }
void from_json(const Json& j, GeoPoint& v) {
  v.lat = number(j, "lat");
  v.lon = number(j, "lon");
}

void to_json(Json& j, const PartnerId& v) { j = v.code(); }
void from_json(const Json& j, PartnerId& v) {
  if (!j.is_string()) throw DecodeError("partner id must be a string");
  try {
    v = PartnerId(j.get<std::string>());
  } catch (const ValidationError& e) {
    throw DecodeError(e.what());
  }
}

void to_json(Json& j, const Sensor& v) {
  j = Json{{"id", v.id},
           {"kind", to_string(v.kind.tag)},
           {"owner", v.owner},
           {"position", v.position},
           {"label", v.label}};
  if (v.kind.tag == SensorKindTag::other) j["kind_label"] = v.kind.other_label;
}
void from_json(const Json& j, Sensor& v) {
  v.id = text(j, "id");
  v.kind.tag = enum_field<SensorKindTag>(j, "kind", parse_sensor_kind);
  v.kind.other_label = v.kind.tag == SensorKindTag::other ? text(j, "kind_label") : std::string{};
  v.owner = decode<PartnerId>(field(j, "owner"));
  v.position = decode<GeoPoint>(field(j, "position"));
  v.label = optional_field(j, "label") ? text(j, "label") : std::string{};
}

void to_json(Json& j, const Uncertainty& v) {
  j = Json{{"aleatoric", v.aleatoric}, {"epistemic", v.epistemic}};
}
void from_json(const Json& j, Uncertainty& v) {
  v.aleatoric = number(j, "aleatoric");
  v.epistemic = number(j, "epistemic");
}

void to_json(Json& j, const SaliencyFrame& v) {
  j = Json{{"time_offset_ms", v.time_offset_ms},
           {"original_ref", v.original_ref},
           {"saliency_ref", v.saliency_ref}};
}
void from_json(const Json& j, SaliencyFrame& v) {
  v.time_offset_ms = integer(j, "time_offset_ms");
  v.original_ref = text(j, "original_ref");
  v.saliency_ref = text(j, "saliency_ref");
}

void to_json(Json& j, const RelevancePoint& v) {
  j = Json{{"time_offset_ms", v.time_offset_ms}, {"score", v.score}};
}
void from_json(const Json& j, RelevancePoint& v) {
  v.time_offset_ms = integer(j, "time_offset_ms");
  v.score = number(j, "score");
}

void to_json(Json& j, const SaliencyExplanation& v) {
  Json scores = Json::object();
  for (const auto& [modality, score] : v.modality_scores) {
    scores[std::string(to_string(modality))] = score;
  }
  j = Json{{"kind", "saliency"},
           {"dominant_modality", to_string(v.dominant_modality)},
           {"modality_scores", scores},
           {"frames", v.frames},
           {"temporal_relevance", v.temporal_relevance}};
}
void from_json(const Json& j, SaliencyExplanation& v) {
  v.dominant_modality = enum_field<Modality>(j, "dominant_modality", parse_modality);
  const Json& scores = field(j, "modality_scores");
  if (!scores.is_object()) throw DecodeError("field 'modality_scores' must be an object");
  v.modality_scores.clear();
  for (const auto& [key, value] : scores.items()) {
    auto modality = parse_modality(key);
    if (!modality) throw DecodeError("unknown modality '" + key + "' in modality_scores");
    if (!value.is_number()) throw DecodeError("modality score must be a number");
    v.modality_scores[*modality] = value.get<double>();
  }
  v.frames = optional_field(j, "frames") ? list_of<SaliencyFrame>(j, "frames")
                                         : std::vector<SaliencyFrame>{};
  v.temporal_relevance = optional_field(j, "temporal_relevance")
                             ? list_of<RelevancePoint>(j, "temporal_relevance")
                             : std::vector<RelevancePoint>{};
}

void to_json(Json& j, const FiredGrounding& v) {
  j = Json{{"kind", to_string(v.kind)},
           {"rule", v.rule_text},
           {"event_ids", v.event_ids},
           {"occurrence_prob", v.occurrence_prob}};
}
void from_json(const Json& j, FiredGrounding& v) {
  v.kind = enum_field<RuleKind>(j, "kind", parse_rule_kind);
  v.rule_text = text(j, "rule");
  v.event_ids.clear();
  for (const auto& id : array(j, "event_ids")) {
    if (!id.is_string()) throw DecodeError("event_ids must hold strings");
    v.event_ids.push_back(id.get<std::string>());
  }
  v.occurrence_prob = number(j, "occurrence_prob");
}

void to_json(Json& j, const ProofTrace& v) {
  j = Json{{"id", v.id()},
           {"fluent", v.fluent},
           {"tick", v.tick},
           {"fired_groundings", v.fired_groundings},
           {"prob_before", v.prob_before},
           {"init_prob", v.init_prob},
           {"term_prob", v.term_prob},
           {"prob_after", v.prob_after}};
}
void from_json(const Json& j, ProofTrace& v) {
  v.fluent = text(j, "fluent");
  v.tick = integer(j, "tick");
  v.fired_groundings = list_of<FiredGrounding>(j, "fired_groundings");
  v.prob_before = number(j, "prob_before");
  v.init_prob = number(j, "init_prob");
  v.term_prob = number(j, "term_prob");
  v.prob_after = number(j, "prob_after");
}

Json explanation_to_json(const ExplanationPayload& payload) {
  if (const auto* s = std::get_if<SaliencyExplanation>(&payload)) return Json(*s);
  return Json{{"kind", "symbolic"}, {"trace", std::get<ProofTrace>(payload)}};
}

ExplanationPayload explanation_from_json(const Json& j) {
  const std::string kind = text(j, "kind");
  if (kind == "saliency") return decode<SaliencyExplanation>(j);
  if (kind == "symbolic") return decode<ProofTrace>(field(j, "trace"));
  throw DecodeError("unknown explanation kind '" + kind + "'");
}

void to_json(Json& j, const SimpleEvent& v) {
  j = Json{{"id", v.id},
           {"event_type", v.event_type},
           {"sensor_id", v.sensor_id},
           {"time", v.time},
           {"position", v.position},
           {"region_radius_m", v.region_radius_m},
           {"confidence", v.confidence},
           {"modality", to_string(v.modality)}};
  if (v.uncertainty) j["uncertainty"] = *v.uncertainty;
  if (v.explanation) j["explanation"] = explanation_to_json(*v.explanation);
}
void from_json(const Json& j, SimpleEvent& v) {
  v.id = text(j, "id");
  v.event_type = text(j, "event_type");
  v.sensor_id = text(j, "sensor_id");
  v.time = integer(j, "time");
  v.position = decode<GeoPoint>(field(j, "position"));
  v.region_radius_m = optional_field(j, "region_radius_m") ? number(j, "region_radius_m") : 0.0;
  v.confidence = number(j, "confidence");
  v.modality = optional_field(j, "modality") ? enum_field<Modality>(j, "modality", parse_modality)
                                             : Modality::other;
  v.uncertainty.reset();
  if (const Json* u = optional_field(j, "uncertainty")) v.uncertainty = decode<Uncertainty>(*u);
  v.explanation.reset();
  if (const Json* e = optional_field(j, "explanation")) v.explanation = explanation_from_json(*e);
}

void to_json(Json& j, const BeliefThresholds& v) {
  j = Json{{"strong", v.strong}, {"medium", v.medium}, {"weak", v.weak}};
}
void from_json(const Json& j, BeliefThresholds& v) {
  v.strong = number(j, "strong");
  v.medium = number(j, "medium");
  v.weak = number(j, "weak");
}

void to_json(Json& j, const ProbabilityPoint& v) {
  j = Json{{"time_ms", v.time_ms}, {"probability", v.probability}};
}
void from_json(const Json& j, ProbabilityPoint& v) {
  v.time_ms = integer(j, "time_ms");
  v.probability = number(j, "probability");
}

void to_json(Json& j, const ComplexEvent& v) {
  j = Json{{"id", v.id},
           {"fluent", v.fluent},
           {"probability", v.probability},
           {"belief", to_string(v.belief)},
           {"active_since", v.active_since},
           {"last_update", v.last_update},
           {"constituents", v.constituents},
           {"centroid", v.centroid},
           {"radius_m", v.radius_m},
           {"trace", v.trace},
           {"history", v.history}};
}
void from_json(const Json& j, ComplexEvent& v) {
  v.id = text(j, "id");
  v.fluent = text(j, "fluent");
  v.probability = number(j, "probability");
  v.belief = enum_field<BeliefLevel>(j, "belief", parse_belief_level);
  v.active_since = integer(j, "active_since");
  v.last_update = integer(j, "last_update");
  v.constituents.clear();
  for (const auto& id : array(j, "constituents")) {
    if (!id.is_string()) throw DecodeError("constituents must hold strings");
    v.constituents.push_back(id.get<std::string>());
  }
  v.centroid = decode<GeoPoint>(field(j, "centroid"));
  v.radius_m = number(j, "radius_m");
  v.trace = text(j, "trace");
  v.history = list_of<ProbabilityPoint>(j, "history");
}

void to_json(Json& j, const Region& v) {
  j = Json{{"centroid", v.centroid}, {"radius_m", v.radius_m}};
}

void to_json(Json& j, const Violation& v) {
  j = Json{{"field", v.field}, {"message", v.message}};
}

}  // namespace sue
