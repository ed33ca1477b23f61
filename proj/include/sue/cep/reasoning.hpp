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

// Discrete-time probabilistic event calculus: groundings, the per-tick
// fluent update, and the exact possible-worlds oracle that defines it.
//
// Semantics. Each simple event occurs independently with probability equal
// to its confidence. A grounding fires when all of its events occur; it is
// anchored to the tick of its latest event. In a fixed world a fluent holds
// after tick k iff some initiating grounding fires at k, or it held after
// k-1 and no terminating grounding fires at k. Initiation dominates
// termination within one tick.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sue/core/types.hpp"
#include "sue/rules/rule_set.hpp"

namespace sue::cep {

/// Maps wall or virtual time onto ticks of fixed width starting at epoch.
struct TickClock {
  TimeMs epoch_ms = 0;
  TimeMs width_ms = 1000;

  /// floor((t - epoch) / width); negative before the epoch.
  [[nodiscard]] std::int64_t index_of(TimeMs t) const;
  [[nodiscard]] TimeMs start_of(std::int64_t index) const { return epoch_ms + index * width_ms; }
};

struct Tick {
  std::int64_t index = 0;
  TimeMs start_ms = 0;
  TimeMs width_ms = 1000;

  [[nodiscard]] TimeMs end_ms() const { return start_ms + width_ms; }
  static Tick at(const TickClock& clock, std::int64_t index) {
    return Tick{index, clock.start_of(index), clock.width_ms};
  }
};

/// One binding of a rule's patterns to distinct events (pattern order).
struct Grounding {
  const rules::Rule* rule = nullptr;
  std::vector<SimpleEvent> events;
  double occurrence_prob = 0.0;
};

/// Groundings anchored to `tick`: combinations of distinct events, one per
/// pattern, satisfying the confidence floors and pairwise windows, whose
/// latest event lies inside the tick. A set of events binds a rule at most
/// once regardless of pattern order. Events at or after the tick end are
/// ignored. Output order is rule order, then event order of the input.
std::vector<Grounding> find_groundings(const rules::RuleSet& rules,
                                       std::span<const SimpleEvent> window_events,
                                       const Tick& tick);

/// 1 - prod(1 - q): probability that at least one independent grounding fires.
double combine_independent(std::span<const Grounding> groundings);

/// P' = I + (1 - I) * P * (1 - T).
double update_probability(double prob_before, double init_prob, double term_prob);

struct FluentSample {
  std::int64_t tick = 0;
  double prob = 0.0;
  double init_prob = 0.0;
  double term_prob = 0.0;

  friend bool operator==(const FluentSample&, const FluentSample&) = default;
};

struct FluentState {
  std::string fluent;
  double prob = 0.0;
  std::vector<FluentSample> history;  // contiguous tick indices
  std::optional<std::string> active_complex;

  friend bool operator==(const FluentState&, const FluentState&) = default;
};

struct TickUpdate {
  FluentState state;
  ProofTrace trace;
};

/// Applies one tick of initiations and terminations to a fluent. With no
/// groundings at all the probability is carried over unchanged.
TickUpdate tick_update(const FluentState& state, std::span<const Grounding> inits,
                       std::span<const Grounding> terms, const Tick& tick);

inline constexpr std::size_t kOracleMaxEvents = 20;

/// Exact probability that `fluent` holds after `tick`, by enumerating all
/// 2^n occurrence worlds. Independent of find_groundings/tick_update.
/// Throws ValidationError when more than kOracleMaxEvents events are given.
double exact_holds_probability(const rules::RuleSet& rules, std::span<const SimpleEvent> events,
                               std::string_view fluent, std::int64_t tick,
                               const TickClock& clock);

/// Same as exact_holds_probability for every tick in [0, last_tick].
std::vector<double> exact_holds_series(const rules::RuleSet& rules,
                                       std::span<const SimpleEvent> events,
                                       std::string_view fluent, std::int64_t last_tick,
                                       const TickClock& clock);

}  // namespace sue::cep
