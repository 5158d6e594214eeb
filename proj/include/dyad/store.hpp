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

// Relation store: a node set C, a row set D of <f,g> cell pairs over
// C plus a null marker, and the pair-set image the rows project to.
// All mutations here are raw: no constraint is consulted.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dyad {

using NodeId = std::uint32_t;
using RowId = std::uint64_t;

// A cell holds a node or the null marker.
using Cell = std::optional<NodeId>;
using ValuePair = std::pair<Cell, Cell>;
using PairSet = std::set<ValuePair>;

// Value equality per the constraint semantics: true only when both cells
// hold the same node. Null compares unequal to everything, null included.
inline bool same_node(const Cell& a, const Cell& b) {
  return a.has_value() && b.has_value() && *a == *b;
}

struct Node {
  NodeId id = 0;
  std::string label;
};

struct Row {
  RowId id = 0;
  Cell f;
  Cell g;
};

struct StoreError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidLabel : StoreError {
  using StoreError::StoreError;
};
struct DuplicateLabel : StoreError {
  using StoreError::StoreError;
};
struct UnknownNode : StoreError {
  using StoreError::StoreError;
};
struct UnknownRow : StoreError {
  using StoreError::StoreError;
};
struct NodeReferenced : StoreError {
  NodeReferenced(const std::string& msg, std::vector<RowId> refs)
      : StoreError(msg), rows(std::move(refs)) {}
  std::vector<RowId> rows;
};

// Labels are bare tokens: non-empty, no whitespace, no '=', and not the
// reserved word "null" (which denotes the null cell in scripts and dumps).
bool valid_label(const std::string& label);

class Store {
 public:
  Store() = default;

  // Rebuilds a store from persisted parts, validating every invariant:
  // unique ids and labels, known nodes in cells, counters past all ids.
  static Store restore(std::vector<Node> nodes, std::vector<Row> rows,
                       NodeId next_node, RowId next_row);

  NodeId add_node(const std::string& label);
  // Refuses while rows still reference the node (NodeReferenced lists them).
  void remove_node(NodeId id);

  RowId insert_row_raw(const Cell& f, const Cell& g);
  void update_row_raw(RowId id, const Cell& f, const Cell& g);
  void delete_row_raw(RowId id);

  bool has_node(NodeId id) const { return nodes_.count(id) != 0; }
  const Node& node(NodeId id) const;
  std::optional<NodeId> find_node(const std::string& label) const;
  const std::string& label(NodeId id) const { return node(id).label; }

  const Row& row(RowId id) const;
  bool has_row(RowId id) const { return rows_.count(id) != 0; }

  const std::map<NodeId, Node>& nodes() const { return nodes_; }
  // Label order; the deterministic iteration order for node scans.
  const std::map<std::string, NodeId>& labels() const { return by_label_; }
  const std::map<RowId, Row>& rows() const { return rows_; }

  // The image index: every distinct pair with the rows carrying it.
  // Key iteration order doubles as the deterministic pair scan order.
  const std::map<ValuePair, std::set<RowId>>& image() const { return image_; }

  bool has_pair(const ValuePair& p) const { return image_.count(p) != 0; }
  std::uint32_t pair_count(const ValuePair& p) const;
  // Carrier count ignoring one row's contribution (the row being edited).
  std::uint32_t pair_count_excluding(const ValuePair& p, RowId excluded) const;
  bool has_pair_excluding(const ValuePair& p, std::optional<RowId> excluded) const;
  // Smallest row id carrying p, or carrying p other than `excluded`.
  std::optional<RowId> first_row_with_pair(const ValuePair& p) const;
  std::optional<RowId> first_other_row_with_pair(const ValuePair& p, RowId excluded) const;

  NodeId next_node_id() const { return next_node_; }
  RowId next_row_id() const { return next_row_; }

 private:
  void check_cell(const Cell& c) const;
  void index_add(const ValuePair& p, RowId id);
  void index_remove(const ValuePair& p, RowId id);

  std::map<NodeId, Node> nodes_;
  std::map<std::string, NodeId> by_label_;
  std::map<RowId, Row> rows_;
  std::map<ValuePair, std::set<RowId>> image_;
  NodeId next_node_ = 1;
  RowId next_row_ = 1;
};

}  // namespace dyad
