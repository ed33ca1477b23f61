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

#include "sue/analytics/analytics.hpp"

#include <algorithm>
#include <limits>

#include "sue/core/error.hpp"

namespace sue::analytics {

void RunLog::record(const Sensor& sensor) {
  auto it = sensor_index_.find(sensor.id);
  if (it != sensor_index_.end()) {
    sensors_[it->second] = sensor;
    return;
  }
  sensor_index_.emplace(sensor.id, sensors_.size());
  sensors_.push_back(sensor);
}

void RunLog::record(const SimpleEvent& event) {
  if (simple_index_.contains(event.id)) return;
  simple_index_.emplace(event.id, simple_.size());
  simple_.push_back(event);
}

void RunLog::record(const ProofTrace& trace) { traces_.insert_or_assign(trace.id(), trace); }

void RunLog::record(const ComplexEvent& event) {
  auto it = complex_.find(event.id);
  if (it == complex_.end()) {
    complex_order_.push_back(event.id);
    it = complex_.emplace(event.id, ComplexRecord{}).first;
  }
  ComplexRecord& rec = it->second;
  rec.latest = event;
  rec.peak = std::max(rec.peak, event.belief);
  if (!event.trace.empty() && (rec.trace_ids.empty() || rec.trace_ids.back() != event.trace)) {
    rec.trace_ids.push_back(event.trace);
  }
}

const Sensor* RunLog::sensor(std::string_view id) const {
  auto it = sensor_index_.find(id);
  return it == sensor_index_.end() ? nullptr : &sensors_[it->second];
}

const SimpleEvent* RunLog::simple_event(std::string_view id) const {
  auto it = simple_index_.find(id);
  return it == simple_index_.end() ? nullptr : &simple_[it->second];
}

const ComplexEvent* RunLog::complex_event(std::string_view id) const {
  auto it = complex_.find(id);
  return it == complex_.end() ? nullptr : &it->second.latest;
}

const ProofTrace* RunLog::trace(std::string_view id) const {
  auto it = traces_.find(id);
  return it == traces_.end() ? nullptr : &it->second;
}

bool RunLog::contains(std::string_view id) const {
  return simple_index_.contains(id) || complex_.contains(id);
}

std::vector<const ComplexEvent*> RunLog::complex_events() const {
  std::vector<const ComplexEvent*> out;
  out.reserve(complex_order_.size());
  for (const auto& id : complex_order_) out.push_back(&complex_.find(id)->second.latest);
  return out;
}

BeliefLevel RunLog::peak_level(std::string_view id) const {
  auto it = complex_.find(id);
  if (it == complex_.end()) throw NotFoundError("no such event: " + std::string(id));
  return it->second.peak;
}

std::vector<const ProofTrace*> RunLog::traces_of(std::string_view id) const {
  auto it = complex_.find(id);
  if (it == complex_.end()) throw NotFoundError("no such event: " + std::string(id));
  std::vector<const ProofTrace*> out;
  for (const auto& tid : it->second.trace_ids) {
    if (const ProofTrace* t = trace(tid)) out.push_back(t);
  }
  return out;
}

namespace {

void check_range(TimeRange range) {
  if (range.t0 > range.t1) {
    throw ValidationError("inverted range: " + std::to_string(range.t0) + " > " + std::to_string(range.t1));
  }
}

// Calls fn(time, type, level, owner-or-null) once per countable event.
template <typename Fn>
void for_each_counted(const RunLog& log, Fn&& fn) {
  for (const auto& e : log.simple_events()) {
    const Sensor* s = log.sensor(e.sensor_id);
    fn(e.time, e.event_type, classify_belief(e.confidence, log.thresholds()), s ? &s->owner.code() : nullptr);
  }
  for (const ComplexEvent* ce : log.complex_events()) {
    fn(ce->active_since, ce->fluent, log.peak_level(ce->id), static_cast<const std::string*>(nullptr));
  }
}

}  // namespace

Summary summary(const RunLog& log, TimeRange range) {
  check_range(range);
  Summary s;
  for (auto level : {BeliefLevel::not_significant, BeliefLevel::weak, BeliefLevel::medium, BeliefLevel::strong}) {
    s.by_level[level] = 0;
  }
  for_each_counted(log, [&](TimeMs t, const std::string& type, BeliefLevel level, const std::string* owner) {
    if (!range.contains(t)) return;
    ++s.by_type[type];
    ++s.by_level[level];
    if (owner) ++s.by_owner[*owner];
    ++s.total;
  });
  return s;
}

std::vector<TimelineBucket> timeline(const RunLog& log, TimeRange range, TimeMs bucket_width_ms) {
  check_range(range);
  if (bucket_width_ms <= 0) throw ValidationError("bucket width must be positive");
  const TimeMs span = range.t1 - range.t0;
  const TimeMs n = span / bucket_width_ms + (span % bucket_width_ms != 0 ? 1 : 0);
  std::vector<TimelineBucket> buckets(static_cast<std::size_t>(n));
  for (TimeMs i = 0; i < n; ++i) {
    auto& b = buckets[static_cast<std::size_t>(i)];
    b.start_ms = range.t0 + i * bucket_width_ms;
    b.width_ms = std::min(bucket_width_ms, range.t1 - b.start_ms);
  }
  for_each_counted(log, [&](TimeMs t, const std::string& type, BeliefLevel, const std::string*) {
    if (!range.contains(t)) return;
    ++buckets[static_cast<std::size_t>((t - range.t0) / bucket_width_ms)].counts[type];
  });
  return buckets;
}

Json event_detail(const RunLog& log, std::string_view id) {
  if (const SimpleEvent* e = log.simple_event(id)) {
    Json out{{"kind", "simple"}, {"event", *e}};
    if (const Sensor* s = log.sensor(e->sensor_id)) out["sensor"] = *s;
    return out;
  }
  const ComplexEvent* ce = log.complex_event(id);
  if (ce == nullptr) throw NotFoundError("no such event: " + std::string(id));

  std::vector<const SimpleEvent*> members;
  for (const auto& cid : ce->constituents) {
    if (const SimpleEvent* e = log.simple_event(cid)) members.push_back(e);
  }
  std::sort(members.begin(), members.end(), [](const SimpleEvent* a, const SimpleEvent* b) {
    return a->time != b->time ? a->time < b->time : a->id < b->id;
  });
  Json constituents = Json::array();
  for (const SimpleEvent* e : members) constituents.push_back(*e);

  Json traces = Json::array();
  for (const ProofTrace* t : log.traces_of(id)) traces.push_back(*t);
  Json out{{"kind", "complex"}, {"event", *ce}, {"constituents", std::move(constituents)}};
  const ProofTrace* latest = log.trace(ce->trace);
  out["trace"] = latest ? Json(*latest) : Json(nullptr);
  out["traces"] = std::move(traces);
  return out;
}

TimeRange run_extent(const RunLog& log) {
  TimeMs lo = std::numeric_limits<TimeMs>::max();
  TimeMs hi = std::numeric_limits<TimeMs>::min();
  for_each_counted(log, [&](TimeMs t, const std::string&, BeliefLevel, const std::string*) {
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  });
  if (lo > hi) return {0, 0};
  return {lo, hi + 1};
}

void to_json(Json& j, const Summary& v) {
  Json levels = Json::object();
  for (const auto& [level, n] : v.by_level) levels[std::string(to_string(level))] = n;
  j = Json{{"by_type", v.by_type}, {"by_level", levels}, {"by_owner", v.by_owner}, {"total", v.total}};
}

void to_json(Json& j, const TimelineBucket& v) {
  j = Json{{"start_ms", v.start_ms}, {"width_ms", v.width_ms}, {"counts", v.counts}};
}

TimeRange range_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("t0") || !j.contains("t1") || !j["t0"].is_number_integer() ||
      !j["t1"].is_number_integer()) {
    throw DecodeError("range needs integer fields 't0' and 't1'");
  }
  return {j["t0"].get<TimeMs>(), j["t1"].get<TimeMs>()};
}

}  // namespace sue::analytics
