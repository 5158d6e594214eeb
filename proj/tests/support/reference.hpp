/*
 *   Copyright 2026 The dyad authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 */

// Test-side reference algorithms, written independently of the library
// implementations they are compared against: a Warshall-style closure
// and a recursive depth-first cycle probe.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dyad/cycle.hpp"
#include "dyad/store.hpp"

namespace dyad::testref {

// Reachability pairs by iterated squaring of the label relation.
inline std::set<std::pair<std::string, std::string>> warshall_closure(
    const Store& store, std::optional<RowId> excluded = std::nullopt) {
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  for (const auto& [label, id] : store.labels()) {
    index[label] = labels.size();
    labels.push_back(label);
  }
  std::size_t n = labels.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (const auto& [p, carriers] : store.image()) {
    if (!p.first || !p.second) continue;
    if (excluded && carriers.size() == 1 && carriers.count(*excluded)) continue;
    r[index.at(store.label(*p.first))][index.at(store.label(*p.second))] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r[i][j]) out.insert({labels[i], labels[j]});
  return out;
}

// Would committing <u,v> close a directed cycle? Recursive depth-first
// search over an adjacency list, nothing shared with the library's
// bit-parallel reachability.
inline bool dfs_would_cycle(const Store& store, std::optional<RowId> excluded,
                            const Cell& u, const Cell& v,
                            NullCyclePolicy policy) {
  if (!u || !v) return policy == NullCyclePolicy::always_cycles;
  if (*u == *v) return true;
  std::vector<std::vector<NodeId>> succ(store.next_node_id());
  for (const auto& [p, carriers] : store.image()) {
    if (!p.first || !p.second) continue;
    if (excluded && carriers.size() == 1 && carriers.count(*excluded)) continue;
    succ[*p.first].push_back(*p.second);
  }
  std::vector<char> seen(store.next_node_id(), 0);
  std::vector<NodeId> stack = {*v};
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    if (x == *u) return true;
    if (seen[x]) continue;
    seen[x] = 1;
    for (NodeId y : succ[x]) {
      if (y == *u) return true;
      if (!seen[y]) stack.push_back(y);
    }
  }
  return false;
}

}  // namespace dyad::testref
