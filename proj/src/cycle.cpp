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

// Cycle detection and reachability over the non-null image pairs.

#include "dyad/cycle.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace dyad {

namespace {

// Dense adjacency over the store's nodes, packed into bitset words so
// that one BFS frontier expansion is a row of word ORs.
struct DenseGraph {
  std::unordered_map<NodeId, std::uint32_t> index;
  std::vector<NodeId> ids;
  std::size_t words = 0;
  std::vector<std::uint64_t> adj;  // row-major: succ[i] as a bit row

  explicit DenseGraph(const Store& store, std::optional<RowId> excluded) {
    index.reserve(store.nodes().size());
    for (const auto& [id, node] : store.nodes()) {
      index.emplace(id, std::uint32_t(ids.size()));
      ids.push_back(id);
    }
    std::size_t n = ids.size();
    words = (n + 63) / 64;
    adj.assign(n * words, 0);
    for (const auto& [pair, carriers] : store.image()) {
      if (!pair.first || !pair.second) continue;
      if (excluded && carriers.size() == 1 && carriers.count(*excluded)) continue;
      std::uint32_t a = index.at(*pair.first);
      std::uint32_t b = index.at(*pair.second);
      adj[a * words + b / 64] |= std::uint64_t(1) << (b % 64);
    }
  }

  // All vertices reachable from `src` via one or more edges.
  std::vector<std::uint64_t> reach_from(std::uint32_t src) const {
    std::vector<std::uint64_t> seen(words, 0), frontier(adj.begin() + src * words,
                                                        adj.begin() + (src + 1) * words);
    while (true) {
      bool grew = false;
      std::vector<std::uint64_t> next(words, 0);
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t fresh = frontier[w] & ~seen[w];
        if (!fresh) continue;
        seen[w] |= fresh;
        grew = true;
        while (fresh) {
          auto bit = std::uint32_t(__builtin_ctzll(fresh));
          fresh &= fresh - 1;
          std::uint32_t v = std::uint32_t(w * 64 + bit);
          const std::uint64_t* row = &adj[std::size_t(v) * words];
          for (std::size_t k = 0; k < words; ++k) next[k] |= row[k];
        }
      }
      if (!grew) break;
      frontier.swap(next);
    }
    return seen;
  }

  static bool test(const std::vector<std::uint64_t>& bits, std::uint32_t v) {
    return (bits[v / 64] >> (v % 64)) & 1;
  }
};

}  // namespace

bool is_cycle(const Store& store, std::optional<RowId> excluded, const Cell& u,
              const Cell& v, NullCyclePolicy policy) {
  if (!u || !v) return policy == NullCyclePolicy::always_cycles;
  if (*u == *v) return true;
  DenseGraph g(store, excluded);
  auto iu = g.index.find(*u);
  auto iv = g.index.find(*v);
  if (iu == g.index.end() || iv == g.index.end()) return false;
  auto reach = g.reach_from(iv->second);
  return DenseGraph::test(reach, iu->second);
}

PairSet transitive_closure(const Store& store, std::optional<RowId> excluded) {
  DenseGraph g(store, excluded);
  PairSet out;
  for (std::uint32_t i = 0; i < g.ids.size(); ++i) {
    auto reach = g.reach_from(i);
    for (std::uint32_t j = 0; j < g.ids.size(); ++j) {
      if (DenseGraph::test(reach, j)) out.insert({Cell(g.ids[i]), Cell(g.ids[j])});
    }
  }
  return out;
}

}  // namespace dyad
