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

#include "sue/core/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sue/core/error.hpp"

namespace sue {

BeliefLevel classify_belief(double p, const BeliefThresholds& thresholds) {
  thresholds.validate();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("probability out of range: " + std::to_string(p));
  }
  if (p >= thresholds.strong) return BeliefLevel::strong;
  if (p >= thresholds.medium) return BeliefLevel::medium;
  if (p >= thresholds.weak) return BeliefLevel::weak;
  return BeliefLevel::not_significant;
}

std::string_view belief_colour(BeliefLevel level, Palette palette) {
  if (palette == Palette::accessible) {
    switch (level) {
      case BeliefLevel::strong: return "#D55E00";
      case BeliefLevel::medium: return "#E69F00";
      case BeliefLevel::weak: return "#F0E442";
      case BeliefLevel::not_significant: return "#0072B2";
    }
  }
  switch (level) {
    case BeliefLevel::strong: return "#E41A1C";
    case BeliefLevel::medium: return "#FF9900";
    case BeliefLevel::weak: return "#FFE119";
    case BeliefLevel::not_significant: return "#377EB8";
  }
  return "#000000";
}

double great_circle_m(const GeoPoint& a, const GeoPoint& b) {
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * kRad;
  const double dlon = (b.lon - a.lon) * kRad;
  const double s_lat = std::sin(dlat / 2.0);
  const double s_lon = std::sin(dlon / 2.0);
  // Symmetric in (a, b): both squared terms and the cosine product commute.
  const double h = s_lat * s_lat + std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * s_lon * s_lon;
  return 2.0 * kEarthRadiusM * std::asin(std::sqrt(std::clamp(h, 0.0, 1.0)));
}

Region complex_region(std::span<const SimpleEvent> constituents) {
  if (constituents.empty()) {
    throw ValidationError("complex_region needs at least one constituent");
  }
  double total = 0.0;
  for (const auto& e : constituents) total += e.confidence;
  const bool equal_weights = total <= 0.0;
  const double denom = equal_weights ? static_cast<double>(constituents.size()) : total;

  Region region;
  for (const auto& e : constituents) {
    const double w = (equal_weights ? 1.0 : e.confidence) / denom;
    region.centroid.lat += w * e.position.lat;
    region.centroid.lon += w * e.position.lon;
  }
  for (const auto& e : constituents) {
    region.radius_m = std::max(region.radius_m,
                               great_circle_m(region.centroid, e.position) + e.region_radius_m);
  }
  return region;
}

SensorRegistry::AddResult SensorRegistry::add(const Sensor& sensor) {
  auto it = sensors_.find(sensor.id);
  if (it == sensors_.end()) {
    sensors_.emplace(sensor.id, sensor);
    return AddResult::added;
  }
  return it->second == sensor ? AddResult::unchanged : AddResult::conflict;
}

const Sensor* SensorRegistry::find(std::string_view id) const {
  auto it = sensors_.find(id);
  return it == sensors_.end() ? nullptr : &it->second;
}

namespace {

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

void check_explanation(const ExplanationPayload& payload, std::vector<Violation>& out) {
  const auto* saliency = std::get_if<SaliencyExplanation>(&payload);
  if (saliency == nullptr) return;
  if (saliency->dominant_modality != Modality::video &&
      saliency->dominant_modality != Modality::audio) {
    out.push_back({"explanation.dominant_modality", "dominant modality must be video or audio"});
  }
  if (saliency->modality_scores.empty()) {
    out.push_back({"explanation.modality_scores", "saliency explanation without modality scores"});
  }
  for (const auto& [modality, score] : saliency->modality_scores) {
    if (!(score >= 0.0)) {
      out.push_back({"explanation.modality_scores", "negative modality score"});
      break;
    }
  }
  for (std::size_t i = 1; i < saliency->frames.size(); ++i) {
    if (saliency->frames[i].time_offset_ms < saliency->frames[i - 1].time_offset_ms) {
      out.push_back({"explanation.frames", "frame time offsets decrease"});
      break;
    }
  }
  for (const auto& point : saliency->temporal_relevance) {
    if (!(point.score >= 0.0)) {
      out.push_back({"explanation.temporal_relevance", "negative relevance score"});
      break;
    }
  }
}

}  // namespace

std::vector<Violation> validate_event(const SimpleEvent& event, const SensorRegistry& registry) {
  std::vector<Violation> out;
  if (event.id.empty()) out.push_back({"id", "missing event id"});
  if (event.event_type.empty()) out.push_back({"event_type", "missing event type"});
  if (!registry.contains(event.sensor_id)) out.push_back({"sensor_id", "unregistered sensor"});
  if (!in_unit(event.confidence)) out.push_back({"confidence", "confidence out of range"});
  if (!(event.region_radius_m >= 0.0)) {
    out.push_back({"region_radius_m", "negative region radius"});
  }
  if (!event.position.is_valid()) out.push_back({"position", "malformed coordinates"});
  if (event.uncertainty &&
      !(in_unit(event.uncertainty->aleatoric) && in_unit(event.uncertainty->epistemic))) {
    out.push_back({"uncertainty", "uncertainty out of range"});
  }
  if (event.explanation) check_explanation(*event.explanation, out);
  return out;
}

std::vector<Violation> validate_sensor(const Sensor& sensor) {
  std::vector<Violation> out;
  if (sensor.id.empty()) out.push_back({"id", "missing sensor id"});
  if (!PartnerId::is_valid(sensor.owner.code())) {
    out.push_back({"owner", "invalid partner id"});
  }
  if (sensor.kind.tag == SensorKindTag::other && sensor.kind.other_label.empty()) {
    out.push_back({"kind_label", "sensor kind 'other' needs a label"});
  }
  if (!sensor.position.is_valid()) out.push_back({"position", "malformed coordinates"});
  return out;
}

}  // namespace sue
