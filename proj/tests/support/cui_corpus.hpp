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

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sue/cui/cui.hpp"

namespace sue::testing_support {

struct CorpusCase {
  std::string utterance;
  cui::Intent expected;
};

// Tab-separated: utterance, kind, arg, value, last_ms. '#' lines are comments.
inline std::vector<CorpusCase> load_cui_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<CorpusCase> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
      f.push_back(line.substr(start, tab - start));
    }
    f.push_back(line.substr(start));
    f.resize(5);
    CorpusCase c{f[0], {}};
    for (auto k : {cui::IntentKind::show_sensors_by, cui::IntentKind::set_palette, cui::IntentKind::filter_events,
                   cui::IntentKind::describe_event, cui::IntentKind::show_timeline, cui::IntentKind::help,
                   cui::IntentKind::unknown}) {
      if (cui::to_string(k) == f[1]) c.expected.kind = k;
    }
    if (cui::to_string(c.expected.kind) != f[1]) throw std::runtime_error("bad intent kind: " + f[1]);
    c.expected.arg = f[2];
    c.expected.value = f[3];
    if (!f[4].empty()) c.expected.last_ms = std::stoll(f[4]);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace sue::testing_support
