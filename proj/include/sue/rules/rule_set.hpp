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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sue/core/types.hpp"

namespace sue::rules {

/// Matches simple events of one type, optionally filtered by a confidence
/// floor and a modality. Events below the floor never enter a grounding.
struct EventPattern {
  std::string event_type;
  double min_confidence = 0.0;
  std::optional<Modality> modality;

  [[nodiscard]] bool matches(const SimpleEvent& event) const;

  friend bool operator==(const EventPattern&, const EventPattern&) = default;
};

/// A conjunction of patterns that initiates or terminates a fluent.
/// Conjunctions (more than one pattern) always carry both windows; every
/// pair of bound events must lie within both bounds. Windows on a single
/// pattern are kept for round-tripping but have no effect.
struct Rule {
  RuleKind kind = RuleKind::initiates;
  std::string fluent;
  std::vector<EventPattern> patterns;
  std::optional<TimeMs> within_ms;
  std::optional<double> within_m;

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleSet {
  std::vector<std::string> fluents;  // declaration order
  std::vector<Rule> rules;

  [[nodiscard]] bool declares(std::string_view fluent) const;
  /// Largest temporal window over all conjunctions; 0 when there are none.
  [[nodiscard]] TimeMs max_within_ms() const;

  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

/// 1-based source position with a message.
struct Diagnostic {
  int line = 1;
  int column = 1;
  std::string message;

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

struct ParseResult {
  std::optional<RuleSet> rules;  // set only when diagnostics is empty
  std::vector<Diagnostic> diagnostics;

  [[nodiscard]] bool ok() const { return rules.has_value(); }
};

/// Parses rule source. All-or-nothing: any diagnostic means no RuleSet.
///
///   ruleset     := (fluent_decl | rule)*
///   fluent_decl := "fluent" IDENT
///   rule        := ("initiate" | "terminate") IDENT "when" pattern ("and" pattern)* window?
///   pattern     := IDENT ("(" arg ("," arg)* ")")?
///   arg         := "confidence" ">=" NUMBER | "modality" "=" IDENT
///   window      := "within" DURATION "," DISTANCE
///   DURATION    := NUMBER ("ms" | "s" | "m")      -- "m" is minutes here
///   DISTANCE    := NUMBER ("m" | "km")            -- "m" is meters here
///
/// Comments run from "#" to end of line; whitespace is insignificant.
ParseResult parse_rules(std::string_view source);

/// Canonical source text; parse_rules(format_rules(rs)) == rs.
std::string format_rules(const RuleSet& rules);

/// One rule on one line, as it appears in format_rules output.
std::string format_rule(const Rule& rule);

/// Thrown by load helpers when a rules source does not parse.
class RuleParseError : public std::runtime_error {
 public:
  explicit RuleParseError(std::vector<Diagnostic> diagnostics);
  [[nodiscard]] const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Reads and parses a `.sue-rules` file. Throws RuleParseError or
/// std::runtime_error when the file cannot be read.
RuleSet load_rules_file(const std::string& path);

}  // namespace sue::rules
