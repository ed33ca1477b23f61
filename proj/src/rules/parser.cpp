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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "sue/rules/rule_set.hpp"

namespace sue::rules {

namespace {

enum class Tok { ident, number, lparen, rparen, comma, greater_equal, equals, end, bad };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

constexpr std::array<std::string_view, 8> kKeywords{
    "fluent", "initiate", "terminate", "when", "and", "within", "confidence", "modality"};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{Tok::bad, {}, line, column};
    std::size_t n = 1;
    if (ident_start(c)) {
      while (i + n < src.size() && ident_char(src[i + n])) ++n;
      tok.kind = Tok::ident;
    } else if (digit(c)) {
      while (i + n < src.size() && digit(src[i + n])) ++n;
      if (i + n + 1 < src.size() && src[i + n] == '.' && digit(src[i + n + 1])) {
        ++n;
        while (i + n < src.size() && digit(src[i + n])) ++n;
      }
      tok.kind = Tok::number;
    } else if (c == '(') {
      tok.kind = Tok::lparen;
    } else if (c == ')') {
      tok.kind = Tok::rparen;
    } else if (c == ',') {
      tok.kind = Tok::comma;
    } else if (c == '=') {
      tok.kind = Tok::equals;
    } else if (c == '>' && i + 1 < src.size() && src[i + 1] == '=') {
      tok.kind = Tok::greater_equal;
      n = 2;
    }
    tok.text = std::string(src.substr(i, n));
    out.push_back(std::move(tok));
    advance(n);
  }
  out.push_back(Token{Tok::end, {}, line, column});
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::end: return "end of input";
    case Tok::number: return "number '" + t.text + "'";
    case Tok::ident: return (is_keyword(t.text) ? "keyword '" : "identifier '") + t.text + "'";
    case Tok::bad: return "unexpected character '" + t.text + "'";
    default: return "'" + t.text + "'";
  }
}

struct SyntaxError {
  Token at;
  std::string message;
};

struct Located {
  int line = 1;
  int column = 1;
};

// Positions of the parts of a rule that semantic checks report against.
struct RuleSite {
  Located keyword;
  Located fluent;
  std::vector<std::optional<Located>> confidence_at;  // one per pattern
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ParseResult run() {
    RuleSet rs;
    std::vector<Located> fluent_sites;
    std::vector<RuleSite> rule_sites;
    while (peek().kind != Tok::end) {
      try {
        const Token& head = peek();
        if (head.kind == Tok::ident && head.text == "fluent") {
          take();
          const Token name = expect_ident("fluent name");
          rs.fluents.push_back(name.text);
          fluent_sites.push_back({name.line, name.column});
        } else if (head.kind == Tok::ident && (head.text == "initiate" || head.text == "terminate")) {
          RuleSite site;
          rs.rules.push_back(parse_rule(site));
          rule_sites.push_back(std::move(site));
        } else {
          throw SyntaxError{head, "expected 'fluent', 'initiate' or 'terminate', found " + describe(head)};
        }
      } catch (const SyntaxError& e) {
        diags_.push_back({e.at.line, e.at.column, e.message});
        recover();
      }
    }
    check_semantics(rs, fluent_sites, rule_sites);
    std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.line, a.column) < std::tie(b.line, b.column);
    });
    ParseResult result;
    result.diagnostics = std::move(diags_);
    if (result.diagnostics.empty()) result.rules = std::move(rs);
    return result;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::end) ++pos_;
    return t;
  }
  bool at_keyword(std::string_view kw) const {
    return peek().kind == Tok::ident && peek().text == kw;
  }

  Token expect_ident(std::string_view what) {
    const Token& t = peek();
    if (t.kind != Tok::ident || is_keyword(t.text)) {
      throw SyntaxError{t, "expected " + std::string(what) + ", found " + describe(t)};
    }
    return take();
  }

  void expect_keyword(std::string_view kw) {
    if (!at_keyword(kw)) {
      throw SyntaxError{peek(), "expected '" + std::string(kw) + "', found " + describe(peek())};
    }
    take();
  }

  void expect(Tok kind, std::string_view text) {
    if (peek().kind != kind) {
      throw SyntaxError{peek(), "expected '" + std::string(text) + "', found " + describe(peek())};
    }
    take();
  }

  double expect_number() {
    const Token& t = peek();
    if (t.kind != Tok::number) throw SyntaxError{t, "expected number, found " + describe(t)};
    double value = 0.0;
    std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
    take();
    return value;
  }

  // Skip to the start of the next statement.
  bool at_statement_start() const {
    return at_keyword("fluent") || at_keyword("initiate") || at_keyword("terminate");
  }

  void recover() {
    if (!at_statement_start()) take();
    while (peek().kind != Tok::end && !at_statement_start()) take();
  }

  Rule parse_rule(RuleSite& site) {
    const Token kw = take();
    site.keyword = {kw.line, kw.column};
    Rule rule;
    rule.kind = kw.text == "initiate" ? RuleKind::initiates : RuleKind::terminates;
    const Token fluent = expect_ident("fluent name");
    rule.fluent = fluent.text;
    site.fluent = {fluent.line, fluent.column};
    expect_keyword("when");
    rule.patterns.push_back(parse_pattern(site));
    while (at_keyword("and")) {
      take();
      rule.patterns.push_back(parse_pattern(site));
    }
    if (at_keyword("within")) {
      take();
      rule.within_ms = parse_duration();
      expect(Tok::comma, ",");
      rule.within_m = parse_distance();
    }
    return rule;
  }

  EventPattern parse_pattern(RuleSite& site) {
    EventPattern p;
    p.event_type = expect_ident("event type").text;
    site.confidence_at.emplace_back();
    if (peek().kind != Tok::lparen) return p;
    take();
    bool seen_confidence = false;
    bool seen_modality = false;
    do {
      const Token arg = peek();
      if (at_keyword("confidence") && !seen_confidence) {
        take();
        expect(Tok::greater_equal, ">=");
        const Token num = peek();
        p.min_confidence = expect_number();
        site.confidence_at.back() = Located{num.line, num.column};
        seen_confidence = true;
      } else if (at_keyword("modality") && !seen_modality) {
        take();
        expect(Tok::equals, "=");
        const Token m = expect_ident("modality");
        auto modality = parse_modality(m.text);
        if (!modality) throw SyntaxError{m, "unknown modality '" + m.text + "'"};
        p.modality = *modality;
        seen_modality = true;
      } else if (seen_confidence && at_keyword("confidence")) {
        throw SyntaxError{arg, "duplicate 'confidence' constraint"};
      } else if (seen_modality && at_keyword("modality")) {
        throw SyntaxError{arg, "duplicate 'modality' constraint"};
      } else {
        throw SyntaxError{arg, "expected 'confidence' or 'modality', found " + describe(arg)};
      }
    } while (peek().kind == Tok::comma && (take(), true));
    expect(Tok::rparen, ")");
    return p;
  }

  // Number followed by a unit identifier; returns (value, unit token).
  std::pair<double, Token> quantity(std::string_view what) {
    const Token num = peek();
    const double value = expect_number();
    const Token& unit = peek();
    if (unit.kind != Tok::ident) {
      throw SyntaxError{unit, "expected " + std::string(what) + " unit after " + describe(num)};
    }
    return {value, take()};
  }

  TimeMs parse_duration() {
    const Token start = peek();
    auto [value, unit] = quantity("duration");
    double factor = 0.0;
    if (unit.text == "ms") {
      factor = 1.0;
    } else if (unit.text == "s") {
      factor = 1000.0;
    } else if (unit.text == "m") {
      factor = 60'000.0;
    } else {
      throw SyntaxError{unit, "unknown duration unit '" + unit.text + "' (use ms, s or m)"};
    }
    const double ms = value * factor;
    const double rounded = std::round(ms);
    if (std::abs(ms - rounded) > 1e-6 || rounded > 9.0e15) {
      throw SyntaxError{start, "duration must be a whole number of milliseconds"};
    }
    if (rounded <= 0.0) throw SyntaxError{start, "temporal window must be positive"};
    return static_cast<TimeMs>(rounded);
  }

  double parse_distance() {
    const Token start = peek();
    auto [value, unit] = quantity("distance");
    double meters = 0.0;
    if (unit.text == "m") {
      meters = value;
    } else if (unit.text == "km") {
      meters = value * 1000.0;
    } else {
      throw SyntaxError{unit, "unknown distance unit '" + unit.text + "' (use m or km)"};
    }
    if (!(meters > 0.0) || !std::isfinite(meters)) {
      throw SyntaxError{start, "spatial window must be positive"};
    }
    return meters;
  }

  void check_semantics(const RuleSet& rs, const std::vector<Located>& fluent_sites,
                       const std::vector<RuleSite>& rule_sites) {
    // Rules lost to syntax errors would make the coverage check misleading.
    const bool complete = diags_.empty();
    std::set<std::string> declared;
    for (std::size_t i = 0; i < rs.fluents.size(); ++i) {
      if (!declared.insert(rs.fluents[i]).second) {
        diags_.push_back({fluent_sites[i].line, fluent_sites[i].column,
                          "duplicate fluent '" + rs.fluents[i] + "'"});
      }
    }
    std::set<std::string> initiated;
    for (std::size_t i = 0; i < rs.rules.size(); ++i) {
      const Rule& rule = rs.rules[i];
      const RuleSite& site = rule_sites[i];
      if (!declared.contains(rule.fluent)) {
        diags_.push_back({site.fluent.line, site.fluent.column,
                          "undeclared fluent '" + rule.fluent + "'"});
      }
      if (rule.kind == RuleKind::initiates) initiated.insert(rule.fluent);
      if (rule.patterns.size() > 1 && !rule.within_ms) {
        diags_.push_back({site.keyword.line, site.keyword.column,
                          "conjunction of " + std::to_string(rule.patterns.size()) +
                              " patterns requires a 'within' window"});
      }
      for (std::size_t p = 0; p < rule.patterns.size(); ++p) {
        const auto& at = site.confidence_at[p];
        if (rule.patterns[p].min_confidence > 1.0 && at) {
          diags_.push_back({at->line, at->column, "confidence out of range"});
        }
      }
    }
    for (std::size_t i = 0; complete && i < rs.fluents.size(); ++i) {
      if (!initiated.contains(rs.fluents[i])) {
        diags_.push_back({fluent_sites[i].line, fluent_sites[i].column,
                          "fluent '" + rs.fluents[i] + "' has no initiate rule"});
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic> diags_;
};

std::string format_number(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf.data(), end);
}

std::string format_duration(TimeMs ms) {
  if (ms % 1000 == 0) return std::to_string(ms / 1000) + "s";
  return std::to_string(ms) + "ms";
}

}  // namespace

bool EventPattern::matches(const SimpleEvent& event) const {
  return event.event_type == event_type && event.confidence >= min_confidence &&
         (!modality || *modality == event.modality);
}

bool RuleSet::declares(std::string_view fluent) const {
  return std::find(fluents.begin(), fluents.end(), fluent) != fluents.end();
}

TimeMs RuleSet::max_within_ms() const {
  TimeMs out = 0;
  for (const auto& r : rules) {
    if (r.patterns.size() > 1 && r.within_ms) out = std::max(out, *r.within_ms);
  }
  return out;
}

std::string Diagnostic::to_string() const {
  return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

ParseResult parse_rules(std::string_view source) { return Parser(lex(source)).run(); }

std::string format_rule(const Rule& rule) {
  std::string out = rule.kind == RuleKind::initiates ? "initiate " : "terminate ";
  out += rule.fluent + " when ";
  for (std::size_t i = 0; i < rule.patterns.size(); ++i) {
    const EventPattern& p = rule.patterns[i];
    if (i > 0) out += " and ";
    out += p.event_type;
    std::vector<std::string> args;
    if (p.min_confidence != 0.0) args.push_back("confidence >= " + format_number(p.min_confidence));
    if (p.modality) args.push_back("modality = " + std::string(sue::to_string(*p.modality)));
    if (!args.empty()) {
      out += "(";
      for (std::size_t a = 0; a < args.size(); ++a) out += (a ? ", " : "") + args[a];
      out += ")";
    }
  }
  if (rule.within_ms && rule.within_m) {
    out += " within " + format_duration(*rule.within_ms) + ", " + format_number(*rule.within_m) + "m";
  }
  return out;
}

std::string format_rules(const RuleSet& rules) {
  std::string out;
  for (const auto& f : rules.fluents) out += "fluent " + f + "\n";
  if (!rules.fluents.empty() && !rules.rules.empty()) out += "\n";
  for (const auto& r : rules.rules) out += format_rule(r) + "\n";
  return out;
}

namespace {
std::string join_diagnostics(const std::vector<Diagnostic>& diags) {
  std::string out = "rule source has " + std::to_string(diags.size()) + " diagnostic(s)";
  for (const auto& d : diags) out += "\n  " + d.to_string();
  return out;
}
}  // namespace

RuleParseError::RuleParseError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

RuleSet load_rules_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read rules file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  ParseResult result = parse_rules(buffer.str());
  if (!result.ok()) throw RuleParseError(std::move(result.diagnostics));
  return std::move(*result.rules);
}

}  // namespace sue::rules
