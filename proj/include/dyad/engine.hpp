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

// Event-driven enforcement engine: applies mutations to a store under
// an enforcement plan, rejecting requests that would break a guarded
// constraint and generating the extra rows the declared constraints
// require after an accepted mutation.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dyad/constraints.hpp"
#include "dyad/cycle.hpp"
#include "dyad/store.hpp"

namespace dyad {

enum class Propagation {
  // After each accepted mutation, keep generating until every attached
  // generating handler is satisfied (the default).
  fixpoint,
  // One handler pass per mutation; generated rows are not revisited.
  single_pass,
};

struct EngineConfig {
  Propagation propagation = Propagation::fixpoint;
  NullCyclePolicy null_cycles = NullCyclePolicy::never_cycles;
};

struct Mutation {
  enum class Kind { add_node, insert_row, update_row, delete_row };

  static Mutation addNode(std::string label);
  static Mutation insertRow(Cell f, Cell g);
  static Mutation updateRow(RowId row, Cell f, Cell g);
  static Mutation deleteRow(RowId row);

  Kind kind = Kind::insert_row;
  std::string label;  // add_node
  RowId row = 0;      // update_row / delete_row
  Cell f;
  Cell g;
};

// One engine-generated side effect on the row set.
struct RowChange {
  enum class Kind { added, removed, replaced };
  Kind kind = Kind::added;
  RowId row = 0;
  Cell f;  // added/replaced: new cells; removed: the removed cells
  Cell g;
};

struct Rejection {
  Property property = Property::connected;
  std::string message;  // e.g. "Request rejected: f•g acyclic!"
};

struct Outcome {
  bool accepted = false;
  std::optional<RowId> row;    // the affected row, when one exists
  std::optional<NodeId> node;  // add_node only
  std::vector<RowChange> generated;
  std::optional<Rejection> rejection;
};

class Engine {
 public:
  Engine(Store& store, EnforcementPlan plan, EngineConfig config = {});

  // Applies one mutation atomically: either it is rejected and the store
  // is untouched, or it is committed together with all generated rows.
  // Throws std::logic_error when the plan holds conflicts, and StoreError
  // subclasses for plumbing failures (unknown rows, bad labels, ...).
  Outcome apply(const Mutation& mutation);

  const EnforcementPlan& plan() const { return plan_; }
  const EngineConfig& config() const { return config_; }
  Store& store() { return store_; }

 private:
  std::optional<Rejection> validate_save(std::optional<RowId> target,
                                         const Cell& f, const Cell& g) const;
  std::optional<Rejection> validate_delete(const Row& row) const;

  void propagate_after_insert(RowId id, const Cell& f, const Cell& g,
                              std::vector<RowChange>& generated);
  void propagate_after_update(RowId id, const Cell& old_f, const Cell& old_g,
                              const Cell& f, const Cell& g,
                              std::vector<RowChange>& generated);
  void propagate_after_delete(const Cell& old_f, const Cell& old_g,
                              std::vector<RowChange>& generated);
  void on_node_added(NodeId id, std::vector<RowChange>& generated);
  void chase(std::vector<RowChange>& generated);

  RowId add_generated(const Cell& f, const Cell& g,
                      std::vector<RowChange>& generated);
  bool attached(Property p) const { return plan_.handlers[int(p)].attached; }
  bool tolerant(Property p) const {
    return plan_.handlers[int(p)].null_tolerant;
  }
  Rejection reject(Property p) const;

  Store& store_;
  EnforcementPlan plan_;
  EngineConfig config_;
};

// Exact rejection text for a violated property, e.g.
// reject_message(Property::acyclic) == "Request rejected: f•g acyclic!".
std::string reject_message(Property p);
// The combined wording used when connectivity and symmetry act as one.
std::string reject_message_connected_and_symmetric();

}  // namespace dyad
