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

// Query side of a run: what has been seen so far, and the summaries,
// timelines and detail views computed from it. Ranges are half-open.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sue/core/json.hpp"
#include "sue/core/model.hpp"
#include "sue/core/types.hpp"

namespace sue::analytics {

struct TimeRange {
  TimeMs t0 = 0;
  TimeMs t1 = 0;

  [[nodiscard]] bool contains(TimeMs t) const { return t >= t0 && t < t1; }
};

/// Append-only record of one run. Complex events are kept at their latest
/// update together with the traces that produced them.
class RunLog {
 public:
  explicit RunLog(BeliefThresholds thresholds = {}) : thresholds_(thresholds) {}

  void record(const Sensor& sensor);
  void record(const SimpleEvent& event);
  void record(const ProofTrace& trace);
  void record(const ComplexEvent& event);

  [[nodiscard]] const BeliefThresholds& thresholds() const { return thresholds_; }
  [[nodiscard]] const Sensor* sensor(std::string_view id) const;
  [[nodiscard]] const SimpleEvent* simple_event(std::string_view id) const;
  [[nodiscard]] const ComplexEvent* complex_event(std::string_view id) const;
  [[nodiscard]] const ProofTrace* trace(std::string_view id) const;
  [[nodiscard]] bool contains(std::string_view id) const;

  [[nodiscard]] const std::vector<Sensor>& sensors() const { return sensors_; }
  [[nodiscard]] const std::vector<SimpleEvent>& simple_events() const { return simple_; }
  /// Every complex event ever minted, in order of creation, at its latest state.
  [[nodiscard]] std::vector<const ComplexEvent*> complex_events() const;
  /// Highest belief level the complex event reached.
  [[nodiscard]] BeliefLevel peak_level(std::string_view id) const;
  /// Traces behind each update of the complex event, oldest first.
  [[nodiscard]] std::vector<const ProofTrace*> traces_of(std::string_view id) const;

 private:
  struct ComplexRecord {
    ComplexEvent latest;
    BeliefLevel peak = BeliefLevel::not_significant;
    std::vector<std::string> trace_ids;
  };

  BeliefThresholds thresholds_;
  std::vector<Sensor> sensors_;
  std::map<std::string, std::size_t, std::less<>> sensor_index_;
  std::vector<SimpleEvent> simple_;
  std::map<std::string, std::size_t, std::less<>> simple_index_;
  std::vector<std::string> complex_order_;
  std::map<std::string, ComplexRecord, std::less<>> complex_;
  std::map<std::string, ProofTrace, std::less<>> traces_;
};

struct Summary {
  std::map<std::string, std::int64_t> by_type;
  std::map<BeliefLevel, std::int64_t> by_level;
  std::map<std::string, std::int64_t> by_owner;  // simple events only
  std::int64_t total = 0;

  bool operator==(const Summary&) const = default;
};

struct TimelineBucket {
  TimeMs start_ms = 0;
  TimeMs width_ms = 0;  // the last bucket is cut short at t1
  std::map<std::string, std::int64_t> counts;

  bool operator==(const TimelineBucket&) const = default;
};

/// Simple events count under their type, owner and confidence level.
/// Complex events count once, at activation, under their fluent name and
/// peak level. Throws ValidationError when t0 > t1.
Summary summary(const RunLog& log, TimeRange range);

/// ceil((t1 - t0) / width) buckets covering the range. Throws
/// ValidationError for a non-positive width or an inverted range.
std::vector<TimelineBucket> timeline(const RunLog& log, TimeRange range, TimeMs bucket_width_ms);

/// {kind: "simple", event, sensor} or {kind: "complex", event, constituents,
/// trace, traces}; constituents ordered by (time, id). Throws NotFoundError.
Json event_detail(const RunLog& log, std::string_view id);

/// Smallest range covering every event of the run, [first, last + 1).
TimeRange run_extent(const RunLog& log);

void to_json(Json& j, const Summary& v);
void to_json(Json& j, const TimelineBucket& v);
TimeRange range_from_json(const Json& j);

}  // namespace sue::analytics
