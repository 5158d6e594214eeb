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

// Relation store implementation.

#include "dyad/store.hpp"

#include <algorithm>
#include <cctype>

namespace dyad {

bool valid_label(const std::string& label) {
  if (label.empty() || label == "null") return false;
  for (unsigned char ch : label) {
    if (std::isspace(ch) || ch == '=') return false;
  }
  return true;
}

NodeId Store::add_node(const std::string& label) {
  if (!valid_label(label)) throw InvalidLabel("invalid node label: '" + label + "'");
  if (by_label_.count(label)) throw DuplicateLabel("duplicate node label: '" + label + "'");
  NodeId id = next_node_++;
  nodes_.emplace(id, Node{id, label});
  by_label_.emplace(label, id);
  return id;
}

void Store::remove_node(NodeId id) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNode("unknown node id: " + std::to_string(id));
  std::vector<RowId> refs;
  for (const auto& [rid, row] : rows_) {
    if ((row.f && *row.f == id) || (row.g && *row.g == id)) refs.push_back(rid);
  }
  if (!refs.empty()) {
    throw NodeReferenced("node '" + it->second.label + "' is referenced by " +
                             std::to_string(refs.size()) + " row(s)",
                         std::move(refs));
  }
  by_label_.erase(it->second.label);
  nodes_.erase(it);
}

RowId Store::insert_row_raw(const Cell& f, const Cell& g) {
  check_cell(f);
  check_cell(g);
  RowId id = next_row_++;
  rows_.emplace(id, Row{id, f, g});
  index_add({f, g}, id);
  return id;
}

void Store::update_row_raw(RowId id, const Cell& f, const Cell& g) {
  auto it = rows_.find(id);
  if (it == rows_.end()) throw UnknownRow("unknown row id: " + std::to_string(id));
  check_cell(f);
  check_cell(g);
  index_remove({it->second.f, it->second.g}, id);
  it->second.f = f;
  it->second.g = g;
  index_add({f, g}, id);
}

void Store::delete_row_raw(RowId id) {
  auto it = rows_.find(id);
  if (it == rows_.end()) throw UnknownRow("unknown row id: " + std::to_string(id));
  index_remove({it->second.f, it->second.g}, id);
  rows_.erase(it);
}

const Node& Store::node(NodeId id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNode("unknown node id: " + std::to_string(id));
  return it->second;
}

std::optional<NodeId> Store::find_node(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

const Row& Store::row(RowId id) const {
  auto it = rows_.find(id);
  if (it == rows_.end()) throw UnknownRow("unknown row id: " + std::to_string(id));
  return it->second;
}

std::uint32_t Store::pair_count(const ValuePair& p) const {
  auto it = image_.find(p);
  return it == image_.end() ? 0u : std::uint32_t(it->second.size());
}

std::uint32_t Store::pair_count_excluding(const ValuePair& p, RowId excluded) const {
  auto it = image_.find(p);
  if (it == image_.end()) return 0;
  auto n = std::uint32_t(it->second.size());
  if (it->second.count(excluded)) --n;
  return n;
}

bool Store::has_pair_excluding(const ValuePair& p, std::optional<RowId> excluded) const {
  return excluded ? pair_count_excluding(p, *excluded) > 0 : has_pair(p);
}

std::optional<RowId> Store::first_row_with_pair(const ValuePair& p) const {
  auto it = image_.find(p);
  if (it == image_.end() || it->second.empty()) return std::nullopt;
  return *it->second.begin();
}

std::optional<RowId> Store::first_other_row_with_pair(const ValuePair& p,
                                                      RowId excluded) const {
  auto it = image_.find(p);
  if (it == image_.end()) return std::nullopt;
  for (RowId rid : it->second) {
    if (rid != excluded) return rid;
  }
  return std::nullopt;
}

void Store::check_cell(const Cell& c) const {
  if (c && !nodes_.count(*c)) throw UnknownNode("unknown node id: " + std::to_string(*c));
}

void Store::index_add(const ValuePair& p, RowId id) { image_[p].insert(id); }

void Store::index_remove(const ValuePair& p, RowId id) {
  auto it = image_.find(p);
  it->second.erase(id);
  if (it->second.empty()) image_.erase(it);
}

Store Store::restore(std::vector<Node> nodes, std::vector<Row> rows,
                     NodeId next_node, RowId next_row) {
  Store s;
  for (const auto& n : nodes) {
    if (n.id == 0 || n.id >= next_node)
      throw StoreError("node id out of range: " + std::to_string(n.id));
    if (!valid_label(n.label)) throw InvalidLabel("invalid node label: '" + n.label + "'");
    if (s.nodes_.count(n.id))
      throw StoreError("duplicate node id: " + std::to_string(n.id));
    if (s.by_label_.count(n.label))
      throw DuplicateLabel("duplicate node label: '" + n.label + "'");
    s.nodes_.emplace(n.id, n);
    s.by_label_.emplace(n.label, n.id);
  }
  for (const auto& r : rows) {
    if (r.id == 0 || r.id >= next_row)
      throw StoreError("row id out of range: " + std::to_string(r.id));
    if (s.rows_.count(r.id)) throw StoreError("duplicate row id: " + std::to_string(r.id));
    if (r.f && !s.nodes_.count(*r.f))
      throw UnknownNode("row references unknown node id: " + std::to_string(*r.f));
    if (r.g && !s.nodes_.count(*r.g))
      throw UnknownNode("row references unknown node id: " + std::to_string(*r.g));
    s.rows_.emplace(r.id, r);
    s.index_add({r.f, r.g}, r.id);
  }
  s.next_node_ = next_node;
  s.next_row_ = next_row;
  return s;
}

}  // namespace dyad
