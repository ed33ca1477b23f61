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

// Canonical JSON encodings: snake_case field names, integer milliseconds,
// lowercase enum strings. Decoders throw DecodeError naming the field.

#pragma once

#include <nlohmann/json.hpp>

#include "sue/core/model.hpp"
#include "sue/core/types.hpp"

namespace sue {

using Json = nlohmann::json;

void to_json(Json& j, const GeoPoint& v);
void from_json(const Json& j, GeoPoint& v);
void to_json(Json& j, const PartnerId& v);
void from_json(const Json& j, PartnerId& v);
void to_json(Json& j, const Sensor& v);
void from_json(const Json& j, Sensor& v);
void to_json(Json& j, const Uncertainty& v);
void from_json(const Json& j, Uncertainty& v);
void to_json(Json& j, const SaliencyFrame& v);
void from_json(const Json& j, SaliencyFrame& v);
void to_json(Json& j, const RelevancePoint& v);
void from_json(const Json& j, RelevancePoint& v);
void to_json(Json& j, const SaliencyExplanation& v);
void from_json(const Json& j, SaliencyExplanation& v);
void to_json(Json& j, const FiredGrounding& v);
void from_json(const Json& j, FiredGrounding& v);
void to_json(Json& j, const ProofTrace& v);
void from_json(const Json& j, ProofTrace& v);
void to_json(Json& j, const SimpleEvent& v);
void from_json(const Json& j, SimpleEvent& v);
void to_json(Json& j, const BeliefThresholds& v);
void from_json(const Json& j, BeliefThresholds& v);
void to_json(Json& j, const ProbabilityPoint& v);
void from_json(const Json& j, ProbabilityPoint& v);
void to_json(Json& j, const ComplexEvent& v);
void from_json(const Json& j, ComplexEvent& v);
void to_json(Json& j, const Region& v);
void to_json(Json& j, const Violation& v);

Json explanation_to_json(const ExplanationPayload& payload);
ExplanationPayload explanation_from_json(const Json& j);

/// Decode helper that rethrows any failure as DecodeError.
template <typename T>
T decode(const Json& j) {
  T out{};
  from_json(j, out);
  return out;
}

}  // namespace sue
