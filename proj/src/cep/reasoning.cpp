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

#include "sue/cep/reasoning.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "sue/core/error.hpp"
#include "sue/core/model.hpp"

namespace sue::cep {

std::int64_t TickClock::index_of(TimeMs t) const {
  const TimeMs offset = t - epoch_ms;
  std::int64_t q = offset / width_ms;
  if (offset % width_ms != 0 && offset < 0) --q;
  return q;
}

namespace {

bool within_windows(const rules::Rule& rule, const SimpleEvent& a, const SimpleEvent& b) {
  const TimeMs gap = a.time > b.time ? a.time - b.time : b.time - a.time;
  return gap <= *rule.within_ms && great_circle_m(a.position, b.position) <= *rule.within_m;
}

class RuleMatcher {
 public:
  RuleMatcher(const rules::Rule& rule, std::span<const SimpleEvent> events, const Tick& tick,
              std::vector<Grounding>& out)
      : rule_(rule), events_(events), tick_(tick), out_(out) {}

  void run() {
    picks_.clear();
    extend(0);
  }

 private:
  void extend(std::size_t depth) {
    if (depth == rule_.patterns.size()) {
      emit();
      return;
    }
    const rules::EventPattern& pattern = rule_.patterns[depth];
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const SimpleEvent& e = events_[i];
      if (e.time >= tick_.end_ms() || !pattern.matches(e)) continue;
      if (std::find(picks_.begin(), picks_.end(), i) != picks_.end()) continue;
      if (rule_.patterns.size() > 1) {
        bool ok = true;
        for (std::size_t j : picks_) {
          if (!within_windows(rule_, events_[j], e)) {
            ok = false;
            break;
          }
        }
        if (!ok) continue;
      }
      picks_.push_back(i);
      extend(depth + 1);
      picks_.pop_back();
    }
  }

  void emit() {
    TimeMs latest = events_[picks_.front()].time;
    for (std::size_t i : picks_) latest = std::max(latest, events_[i].time);
    if (latest < tick_.start_ms) return;

    std::vector<std::string> key;
    for (std::size_t i : picks_) key.push_back(events_[i].id);
    std::sort(key.begin(), key.end());
    if (!seen_.insert(std::move(key)).second) return;

    Grounding g;
    g.rule = &rule_;
    g.occurrence_prob = 1.0;
    for (std::size_t i : picks_) {
      g.events.push_back(events_[i]);
      g.occurrence_prob *= events_[i].confidence;
    }
    out_.push_back(std::move(g));
  }

  const rules::Rule& rule_;
  std::span<const SimpleEvent> events_;
  const Tick& tick_;
  std::vector<Grounding>& out_;
  std::vector<std::size_t> picks_;
  std::set<std::vector<std::string>> seen_;
};

}  // namespace

std::vector<Grounding> find_groundings(const rules::RuleSet& rules,
                                       std::span<const SimpleEvent> window_events,
                                       const Tick& tick) {
  std::vector<Grounding> out;
  for (const auto& rule : rules.rules) {
    if (rule.patterns.size() > 1 && !(rule.within_ms && rule.within_m)) continue;
    RuleMatcher(rule, window_events, tick, out).run();
  }
  return out;
}

double combine_independent(std::span<const Grounding> groundings) {
  double none = 1.0;
  for (const auto& g : groundings) none *= 1.0 - g.occurrence_prob;
  return 1.0 - none;
}

double update_probability(double prob_before, double init_prob, double term_prob) {
  return init_prob + (1.0 - init_prob) * prob_before * (1.0 - term_prob);
}

namespace {

FiredGrounding describe(const Grounding& g) {
  FiredGrounding f;
  f.kind = g.rule->kind;
  f.rule_text = rules::format_rule(*g.rule);
  for (const auto& e : g.events) f.event_ids.push_back(e.id);
  f.occurrence_prob = g.occurrence_prob;
  return f;
}

}  // namespace

TickUpdate tick_update(const FluentState& state, std::span<const Grounding> inits,
                       std::span<const Grounding> terms, const Tick& tick) {
  TickUpdate out{state, {}};
  ProofTrace& trace = out.trace;
  trace.fluent = state.fluent;
  trace.tick = tick.index;
  trace.prob_before = state.prob;
  for (const auto& g : inits) trace.fired_groundings.push_back(describe(g));
  for (const auto& g : terms) trace.fired_groundings.push_back(describe(g));

  if (inits.empty() && terms.empty()) {
    trace.prob_after = state.prob;  // inertia, bit-identical
  } else {
    trace.init_prob = combine_independent(inits);
    trace.term_prob = combine_independent(terms);
    trace.prob_after = update_probability(trace.prob_before, trace.init_prob, trace.term_prob);
  }
  out.state.prob = trace.prob_after;
  out.state.history.push_back({tick.index, trace.prob_after, trace.init_prob, trace.term_prob});
  return out;
}

// ---------------------------------------------------------------------------
// Possible-worlds oracle. Deliberately shares no matching code with
// find_groundings: candidate groundings are enumerated over all events as
// bitmasks, and each world is then evaluated by deterministic event calculus.

namespace {

struct MaskGrounding {
  std::uint32_t mask = 0;
  std::int64_t anchor = 0;
  RuleKind kind = RuleKind::initiates;
};

void enumerate(const rules::Rule& rule, std::span<const SimpleEvent> events,
               const TickClock& clock, std::vector<std::size_t>& chosen,
               std::vector<MaskGrounding>& out) {
  const std::size_t depth = chosen.size();
  if (depth == rule.patterns.size()) {
    MaskGrounding g;
    g.kind = rule.kind;
    TimeMs latest = events[chosen[0]].time;
    for (std::size_t i : chosen) {
      g.mask |= std::uint32_t{1} << i;
      latest = std::max(latest, events[i].time);
    }
    g.anchor = clock.index_of(latest);
    out.push_back(g);
    return;
  }
  const auto& pattern = rule.patterns[depth];
  for (std::size_t i = 0; i < events.size(); ++i) {
    const SimpleEvent& e = events[i];
    if (e.event_type != pattern.event_type) continue;
    if (e.confidence < pattern.min_confidence) continue;
    if (pattern.modality && *pattern.modality != e.modality) continue;
    bool ok = std::find(chosen.begin(), chosen.end(), i) == chosen.end();
    if (ok && rule.patterns.size() > 1) {
      for (std::size_t j : chosen) {
        const TimeMs gap = std::llabs(events[j].time - e.time);
        if (gap > *rule.within_ms || great_circle_m(events[j].position, e.position) > *rule.within_m) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    chosen.push_back(i);
    enumerate(rule, events, clock, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace

std::vector<double> exact_holds_series(const rules::RuleSet& rules,
                                       std::span<const SimpleEvent> events,
                                       std::string_view fluent, std::int64_t last_tick,
                                       const TickClock& clock) {
  if (events.size() > kOracleMaxEvents) {
    throw ValidationError("oracle refuses to enumerate " + std::to_string(events.size()) +
                          " events (limit " + std::to_string(kOracleMaxEvents) + ")");
  }
  std::vector<double> holds(last_tick >= 0 ? static_cast<std::size_t>(last_tick + 1) : 0, 0.0);
  if (holds.empty()) return holds;

  std::vector<MaskGrounding> candidates;
  for (const auto& rule : rules.rules) {
    if (rule.fluent != fluent) continue;
    if (rule.patterns.size() > 1 && !(rule.within_ms && rule.within_m)) continue;
    std::vector<std::size_t> chosen;
    enumerate(rule, events, clock, chosen, candidates);
  }

  const std::uint32_t worlds = std::uint32_t{1} << events.size();
  for (std::uint32_t world = 0; world < worlds; ++world) {
    double weight = 1.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
      weight *= (world >> i) & 1U ? events[i].confidence : 1.0 - events[i].confidence;
    }
    if (weight == 0.0) continue;
    bool holding = false;
    for (std::int64_t tick = 0; tick <= last_tick; ++tick) {
      bool init = false;
      bool term = false;
      for (const auto& g : candidates) {
        if (g.anchor != tick || (g.mask & ~world) != 0) continue;
        (g.kind == RuleKind::initiates ? init : term) = true;
      }
      holding = init || (holding && !term);
      if (holding) holds[static_cast<std::size_t>(tick)] += weight;
    }
  }
  return holds;
}

double exact_holds_probability(const rules::RuleSet& rules, std::span<const SimpleEvent> events,
                               std::string_view fluent, std::int64_t tick,
                               const TickClock& clock) {
  if (tick < 0) {
    if (events.size() > kOracleMaxEvents) {
      throw ValidationError("oracle refuses to enumerate more than 20 events");
    }
    return 0.0;
  }
  return exact_holds_series(rules, events, fluent, tick, clock).back();
}

}  // namespace sue::cep
