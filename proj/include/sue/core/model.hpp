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

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sue/core/types.hpp"

namespace sue {

inline constexpr double kEarthRadiusM = 6'371'000.0;

/// Lower-bound inclusive classification of a probability into a belief
/// level. Throws ValidationError for p outside [0,1] or non-monotone
/// thresholds.
BeliefLevel classify_belief(double p, const BeliefThresholds& thresholds = {});

/// Hex colour ("#RRGGBB") of a level under a palette. Palettes change
/// colours only, never levels.
std::string_view belief_colour(BeliefLevel level, Palette palette);

/// Haversine distance in meters on a sphere of radius kEarthRadiusM.
double great_circle_m(const GeoPoint& a, const GeoPoint& b);

struct Region {
  GeoPoint centroid;
  double radius_m = 0.0;

  friend bool operator==(const Region&, const Region&) = default;
};

/// Confidence-weighted centroid of the constituent positions (equal weights
/// when every confidence is zero) and the smallest radius around it that
/// covers each constituent's own localization circle.
///
/// The centroid is an arithmetic mean in degrees, adequate at urban scale
/// away from the antimeridian. Throws ValidationError on an empty list.
Region complex_region(std::span<const SimpleEvent> constituents);

/// Sensors known to a deployment, keyed by id.
class SensorRegistry {
 public:
  enum class AddResult { added, unchanged, conflict };

  /// Registering an identical sensor again is a no-op; a different sensor
  /// under an existing id is a conflict and leaves the registry untouched.
  AddResult add(const Sensor& sensor);

  [[nodiscard]] const Sensor* find(std::string_view id) const;
  [[nodiscard]] bool contains(std::string_view id) const { return find(id) != nullptr; }
  [[nodiscard]] std::size_t size() const { return sensors_.size(); }
  [[nodiscard]] const std::map<std::string, Sensor, std::less<>>& all() const { return sensors_; }

 private:
  std::map<std::string, Sensor, std::less<>> sensors_;
};

struct Violation {
  std::string field;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violated invariant of `event`; empty means valid.
std::vector<Violation> validate_event(const SimpleEvent& event, const SensorRegistry& registry);

/// Invariant violations of a sensor description (id, owner, position).
std::vector<Violation> validate_sensor(const Sensor& sensor);

}  // namespace sue
