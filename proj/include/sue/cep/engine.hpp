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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "sue/cep/reasoning.hpp"
#include "sue/core/types.hpp"
#include "sue/rules/rule_set.hpp"

namespace sue::cep {

struct EngineConfig {
  TickClock clock;
  BeliefThresholds thresholds;
};

enum class SubmitStatus { accepted, duplicate, late };

struct SubmitResult {
  SubmitStatus status = SubmitStatus::accepted;
  std::string message;  // empty when accepted

  [[nodiscard]] bool accepted() const { return status == SubmitStatus::accepted; }
};

/// Output of the engine, in production order: a proof trace for every tick
/// at which groundings fired, followed by the complex-event update it caused.
using Emission = std::variant<ProofTrace, ComplexEvent>;

struct EngineSnapshot {
  std::int64_t next_tick = 0;
  std::vector<FluentState> fluents;  // declaration order
  std::vector<ComplexEvent> active;
};

/// Single-writer streaming reasoner. Events are submitted in any order
/// within the eviction horizon; ticks are processed strictly in order by
/// advance(). Not thread-safe: one logical owner drives it, and snapshots
/// taken between calls can be shared freely.
///
/// Complex-event lifecycle per fluent: a ComplexEvent is minted (id
/// "ce-<fluent>-<n>") when the belief level rises above not_significant,
/// re-emitted at every later tick where groundings fire, and closed with a
/// final not_significant update. Constituents are the events of initiating
/// groundings since the previous creation; they accumulate until closure.
class Engine {
 public:
  Engine(rules::RuleSet rules, EngineConfig config);

  /// Duplicate ids are rejected (first occurrence wins); so are events older
  /// than the eviction horizon measured from the next unprocessed tick.
  SubmitResult submit(const SimpleEvent& event);

  /// Processes every tick up to and including `to_tick`. Advancing to the
  /// last processed tick is a no-op; going further back throws OrderingError.
  std::vector<Emission> advance(std::int64_t to_tick);

  /// Replaces the rule set. Fluents that survive keep their state; fluents
  /// that disappear have any active complex event closed at probability 0.
  std::vector<Emission> reload(rules::RuleSet rules);

  [[nodiscard]] std::int64_t next_tick() const { return next_tick_; }
  [[nodiscard]] const rules::RuleSet& rules() const { return rules_; }
  [[nodiscard]] const EngineConfig& config() const { return config_; }
  /// max within_ms over rules + 2 ticks.
  [[nodiscard]] TimeMs eviction_horizon_ms() const;
  /// Latest tick holding a buffered event, if any.
  [[nodiscard]] std::optional<std::int64_t> last_event_tick() const;
  [[nodiscard]] const FluentState* fluent_state(std::string_view fluent) const;
  [[nodiscard]] std::size_t buffered_events() const { return buffer_.size(); }
  [[nodiscard]] EngineSnapshot snapshot() const;

 private:
  struct Episode {
    std::optional<ComplexEvent> active;
    std::map<std::string, SimpleEvent> pending;  // init constituents awaiting creation
    std::map<std::string, SimpleEvent> members;  // constituents of the active event
    int minted = 0;
  };

  struct FluentRuntime {
    FluentState state;
    Episode episode;
  };

  void process_tick(std::int64_t index, std::vector<Emission>& out);
  void update_episode(FluentRuntime& rt, TickUpdate& update,
                      std::span<const Grounding> inits, const Tick& tick,
                      std::vector<Emission>& out);
  void evict_before(TimeMs cutoff);
  void rebuild_fluents();

  rules::RuleSet rules_;
  EngineConfig config_;
  std::int64_t next_tick_ = 0;
  std::vector<SimpleEvent> buffer_;  // sorted by (time, id)
  std::unordered_set<std::string> seen_ids_;
  std::map<std::string, FluentRuntime> fluents_;
};

}  // namespace sue::cep
