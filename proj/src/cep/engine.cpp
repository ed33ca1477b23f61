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

#include "sue/cep/engine.hpp"

#include <algorithm>
#include <tuple>

#include "sue/core/error.hpp"
#include "sue/core/model.hpp"

namespace sue::cep {

namespace {

bool by_time_then_id(const SimpleEvent& a, const SimpleEvent& b) {
  return std::tie(a.time, a.id) < std::tie(b.time, b.id);
}

std::vector<SimpleEvent> ordered(const std::map<std::string, SimpleEvent>& events) {
  std::vector<SimpleEvent> out;
  out.reserve(events.size());
  for (const auto& [id, e] : events) out.push_back(e);
  std::sort(out.begin(), out.end(), by_time_then_id);
  return out;
}

}  // namespace

Engine::Engine(rules::RuleSet rules, EngineConfig config)
    : rules_(std::move(rules)), config_(config) {
  if (config_.clock.width_ms <= 0) throw ValidationError("tick width must be positive");
  config_.thresholds.validate();
  rebuild_fluents();
}

TimeMs Engine::eviction_horizon_ms() const {
  return rules_.max_within_ms() + 2 * config_.clock.width_ms;
}

SubmitResult Engine::submit(const SimpleEvent& event) {
  if (seen_ids_.contains(event.id)) {
    return {SubmitStatus::duplicate, "duplicate event"};
  }
  const TimeMs cutoff = config_.clock.start_of(next_tick_) - eviction_horizon_ms();
  if (event.time < cutoff) {
    return {SubmitStatus::late, "late event '" + event.id + "' is older than the eviction horizon"};
  }
  seen_ids_.insert(event.id);
  buffer_.insert(std::upper_bound(buffer_.begin(), buffer_.end(), event, by_time_then_id), event);
  return {};
}

std::vector<Emission> Engine::advance(std::int64_t to_tick) {
  if (to_tick < next_tick_ - 1) {
    throw OrderingError("clock regression: asked for tick " + std::to_string(to_tick) +
                        " after processing tick " + std::to_string(next_tick_ - 1));
  }
  std::vector<Emission> out;
  for (; next_tick_ <= to_tick; ++next_tick_) {
    process_tick(next_tick_, out);
    evict_before(config_.clock.start_of(next_tick_ + 1) - eviction_horizon_ms());
  }
  return out;
}

void Engine::process_tick(std::int64_t index, std::vector<Emission>& out) {
  const Tick tick = Tick::at(config_.clock, index);
  const TimeMs from = tick.start_ms - rules_.max_within_ms();
  auto lo = std::lower_bound(buffer_.begin(), buffer_.end(), from,
                             [](const SimpleEvent& e, TimeMs t) { return e.time < t; });
  auto hi = std::lower_bound(lo, buffer_.end(), tick.end_ms(),
                             [](const SimpleEvent& e, TimeMs t) { return e.time < t; });
  const bool any_in_tick =
      std::any_of(lo, hi, [&](const SimpleEvent& e) { return e.time >= tick.start_ms; });
  std::vector<Grounding> groundings;
  if (any_in_tick) groundings = find_groundings(rules_, std::span(&*lo, hi - lo), tick);

  for (const auto& name : rules_.fluents) {
    FluentRuntime& rt = fluents_.at(name);
    std::vector<Grounding> inits;
    std::vector<Grounding> terms;
    for (const auto& g : groundings) {
      if (g.rule->fluent != name) continue;
      (g.rule->kind == RuleKind::initiates ? inits : terms).push_back(g);
    }
    TickUpdate update = tick_update(rt.state, inits, terms, tick);
    if (inits.empty() && terms.empty()) {
      rt.state = std::move(update.state);
      continue;
    }
    out.emplace_back(update.trace);
    update_episode(rt, update, inits, tick, out);
    rt.state = std::move(update.state);
  }
}

void Engine::update_episode(FluentRuntime& rt, TickUpdate& update,
                            std::span<const Grounding> inits, const Tick& tick,
                            std::vector<Emission>& out) {
  Episode& ep = rt.episode;
  const double p = update.trace.prob_after;
  const BeliefLevel level = classify_belief(p, config_.thresholds);

  if (!ep.active) {
    for (const auto& g : inits) {
      for (const auto& e : g.events) ep.pending.emplace(e.id, e);
    }
    // A certainly-false fluent carries no evidence forward.
    if (p == 0.0) ep.pending.clear();
    if (level == BeliefLevel::not_significant) return;

    ComplexEvent ce;
    ce.id = "ce-" + rt.state.fluent + "-" + std::to_string(++ep.minted);
    ce.fluent = rt.state.fluent;
    ce.active_since = tick.start_ms;
    ep.members = std::move(ep.pending);
    ep.pending.clear();
    ep.active = std::move(ce);
  } else {
    for (const auto& g : inits) {
      for (const auto& e : g.events) ep.members.emplace(e.id, e);
    }
  }

  ComplexEvent& ce = *ep.active;
  ce.probability = p;
  ce.belief = level;
  ce.last_update = tick.start_ms;
  ce.trace = update.trace.id();
  ce.history.push_back({tick.start_ms, p});
  const std::vector<SimpleEvent> members = ordered(ep.members);
  ce.constituents.clear();
  for (const auto& e : members) ce.constituents.push_back(e.id);
  if (!members.empty()) {
    const Region region = complex_region(members);
    ce.centroid = region.centroid;
    ce.radius_m = region.radius_m;
  }
  out.emplace_back(ce);
  update.state.active_complex = ce.id;

  if (level == BeliefLevel::not_significant) {
    ep.active.reset();
    ep.members.clear();
    update.state.active_complex.reset();
  }
}

void Engine::evict_before(TimeMs cutoff) {
  auto keep = std::lower_bound(buffer_.begin(), buffer_.end(), cutoff,
                               [](const SimpleEvent& e, TimeMs t) { return e.time < t; });
  buffer_.erase(buffer_.begin(), keep);
}

std::vector<Emission> Engine::reload(rules::RuleSet rules) {
  std::vector<Emission> out;
  const Tick now = Tick::at(config_.clock, next_tick_);
  for (const auto& name : rules_.fluents) {
    if (rules.declares(name)) continue;
    FluentRuntime& rt = fluents_.at(name);
    if (rt.episode.active) {
      ComplexEvent ce = *rt.episode.active;
      ce.probability = 0.0;
      ce.belief = BeliefLevel::not_significant;
      ce.last_update = std::max(now.start_ms, ce.last_update + 1);
      ce.history.push_back({ce.last_update, 0.0});
      out.emplace_back(std::move(ce));
    }
    fluents_.erase(name);
  }
  rules_ = std::move(rules);
  rebuild_fluents();
  return out;
}

void Engine::rebuild_fluents() {
  for (const auto& name : rules_.fluents) {
    if (fluents_.contains(name)) continue;
    FluentRuntime rt;
    rt.state.fluent = name;
    fluents_.emplace(name, std::move(rt));
  }
}

std::optional<std::int64_t> Engine::last_event_tick() const {
  if (buffer_.empty()) return std::nullopt;
  return config_.clock.index_of(buffer_.back().time);
}

const FluentState* Engine::fluent_state(std::string_view fluent) const {
  auto it = fluents_.find(std::string(fluent));
  return it == fluents_.end() ? nullptr : &it->second.state;
}

EngineSnapshot Engine::snapshot() const {
  EngineSnapshot snap;
  snap.next_tick = next_tick_;
  for (const auto& name : rules_.fluents) {
    const FluentRuntime& rt = fluents_.at(name);
    snap.fluents.push_back(rt.state);
    if (rt.episode.active) snap.active.push_back(*rt.episode.active);
  }
  return snap;
}

}  // namespace sue::cep
