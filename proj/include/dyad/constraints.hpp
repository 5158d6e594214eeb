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

// Constraint vocabulary and the redundancy-aware enforcement planner:
// the eighteen dyadic constraint subtypes, the twelve enforcement
// properties they resolve to, conflict detection, and the skip-guard
// table deciding which declared subtypes need their own enforcement.

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dyad {

// Canonical subtype order; all reports and plans iterate in this order.
enum class Subtype : int {
  connectivity = 0,
  reflexivity = 1,
  null_reflexivity = 2,
  null_identity = 3,
  irreflexivity = 4,
  symmetry = 5,
  null_symmetry = 6,
  asymmetry = 7,
  transitivity = 8,
  null_transitivity = 9,
  intransitivity = 10,
  euclideanity = 11,
  null_euclideanity = 12,
  ineuclideanity = 13,
  equivalence = 14,
  null_equivalence = 15,
  acyclicity = 16,
  density = 17,
};

inline constexpr std::size_t kSubtypeCount = 18;

const std::string& to_string(Subtype s);
std::optional<Subtype> subtype_from_string(const std::string& name);
std::vector<Subtype> all_subtypes();

using ConstraintSet = std::set<Subtype>;

// Enforcement property: one handler group per property. Null-tolerant
// subtypes share the group of their strict counterpart; equivalence
// resolves to the reflexive and euclidean groups.
enum class Property : int {
  connected = 0,
  reflexive = 1,
  null_identical = 2,
  irreflexive = 3,
  symmetric = 4,
  asymmetric = 5,
  transitive = 6,
  intransitive = 7,
  euclidean = 8,
  in_euclidean = 9,
  acyclic = 10,
  dense = 11,
};

inline constexpr std::size_t kPropertyCount = 12;

// Adjective used in guard renderings and rejection messages.
const std::string& adjective(Property p);

using PropertyFlags = std::array<bool, kPropertyCount>;

// Boolean expression over property atoms; used to express and render
// the redundancy guards ("skip enforcing X when this holds").
class GuardExpr {
 public:
  enum class Kind { atom, any, all, negate };

  static GuardExpr is(Property p);
  static GuardExpr any(std::vector<GuardExpr> children);
  static GuardExpr all(std::vector<GuardExpr> children);
  static GuardExpr negated(GuardExpr child);

  bool eval(const PropertyFlags& declared) const;
  std::string render() const;

  Kind kind() const { return kind_; }
  Property atom() const { return atom_; }
  const std::vector<GuardExpr>& children() const { return children_; }

 private:
  GuardExpr() = default;
  Kind kind_ = Kind::atom;
  Property atom_ = Property::connected;
  std::vector<GuardExpr> children_;
};

// One row of the dispatch table: when `skip` evaluates true over the
// declared property atoms, `subject` is redundant and not enforced.
struct GuardSpec {
  Subtype subject;
  GuardExpr skip;
};

// The full dispatch table, in canonical subtype order. Null-tolerant
// variants are not listed; they share their strict counterpart's guard.
const std::vector<GuardSpec>& guard_table();
const GuardExpr* guard_for(Subtype s);

// A declared pair (or resolved pair) that can never hold together.
struct Conflict {
  Subtype first;
  Subtype second;
  std::string reason;
};

std::vector<Conflict> conflicts(const ConstraintSet& declared);

enum class Decision { enforce, skip_redundant, conflict };

struct PlanEntry {
  Subtype subtype;
  Decision decision = Decision::enforce;
  std::string reason;  // rendered guard or conflict text; empty for enforce
};

struct HandlerFlags {
  bool attached = false;
  // True when every declared contributor is a null-tolerant variant:
  // the handler then lets null-witnessed pairs satisfy it.
  bool null_tolerant = false;
  // First declared subtype (canonical order) that attached this handler;
  // used as the name in rejection reports.
  Subtype reporter = Subtype::connectivity;
};

struct EnforcementPlan {
  std::vector<PlanEntry> entries;            // canonical subtype order
  std::array<HandlerFlags, kPropertyCount> handlers{};
  // Property atoms of the declared set (null variants set their strict
  // atom; equivalence contributes no atoms). Drives guard evaluation
  // and the conditional branches inside handlers.
  PropertyFlags declared_bases{};

  bool has_conflicts() const;
  std::string render() const;
};

EnforcementPlan plan(const ConstraintSet& declared);

}  // namespace dyad
