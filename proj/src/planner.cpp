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

// Enforcement planner: subtype/property vocabulary, guard expressions,
// the redundancy dispatch table, conflict detection, and plan assembly.

#include "dyad/constraints.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace dyad {

namespace {

const std::array<std::string, kSubtypeCount> kSubtypeNames = {
    "connectivity",     "reflexivity",      "null_reflexivity",
    "null_identity",    "irreflexivity",    "symmetry",
    "null_symmetry",    "asymmetry",        "transitivity",
    "null_transitivity", "intransitivity",  "euclideanity",
    "null_euclideanity", "ineuclideanity",  "equivalence",
    "null_equivalence", "acyclicity",       "density",
};

const std::array<std::string, kPropertyCount> kAdjectives = {
    "connected",  "reflexive",    "null-identical", "irreflexive",
    "symmetric",  "asymmetric",   "transitive",     "intransitive",
    "Euclidean",  "inEuclidean",  "acyclic",        "dense",
};

// Strict counterpart of a null-tolerant subtype; identity otherwise.
Subtype strict_base(Subtype s) {
  switch (s) {
    case Subtype::null_reflexivity: return Subtype::reflexivity;
    case Subtype::null_symmetry: return Subtype::symmetry;
    case Subtype::null_transitivity: return Subtype::transitivity;
    case Subtype::null_euclideanity: return Subtype::euclideanity;
    case Subtype::null_equivalence: return Subtype::equivalence;
    default: return s;
  }
}

bool is_null_variant(Subtype s) { return strict_base(s) != s; }

// Property atom a subtype declares, if any. Equivalence declares none:
// it is resolved into its parts before the guards are evaluated.
std::optional<Property> atom_of(Subtype s) {
  switch (strict_base(s)) {
    case Subtype::connectivity: return Property::connected;
    case Subtype::reflexivity: return Property::reflexive;
    case Subtype::null_identity: return Property::null_identical;
    case Subtype::irreflexivity: return Property::irreflexive;
    case Subtype::symmetry: return Property::symmetric;
    case Subtype::asymmetry: return Property::asymmetric;
    case Subtype::transitivity: return Property::transitive;
    case Subtype::intransitivity: return Property::intransitive;
    case Subtype::euclideanity: return Property::euclidean;
    case Subtype::ineuclideanity: return Property::in_euclidean;
    case Subtype::acyclicity: return Property::acyclic;
    case Subtype::density: return Property::dense;
    default: return std::nullopt;
  }
}

// Handler groups a subtype resolves to. Equivalence spans two groups.
std::vector<Property> groups_of(Subtype s) {
  Subtype base = strict_base(s);
  if (base == Subtype::equivalence)
    return {Property::reflexive, Property::euclidean};
  return {*atom_of(base)};
}

using G = GuardExpr;

std::vector<GuardSpec> build_guard_table() {
  auto is = [](Property p) { return G::is(p); };
  std::vector<GuardSpec> t;
  // connectivity: skip when (irreflexive and asymmetric) or intransitive
  t.push_back({Subtype::connectivity,
               G::any({G::all({is(Property::irreflexive), is(Property::asymmetric)}),
                       is(Property::intransitive)})});
  t.push_back({Subtype::reflexivity,
               G::any({is(Property::null_identical), is(Property::irreflexive),
                       is(Property::asymmetric), is(Property::intransitive),
                       is(Property::in_euclidean), is(Property::acyclic)})});
  t.push_back({Subtype::null_identity,
               G::any({is(Property::irreflexive), is(Property::asymmetric),
                       is(Property::intransitive), is(Property::in_euclidean),
                       is(Property::acyclic)})});
  t.push_back({Subtype::irreflexivity,
               G::any({is(Property::asymmetric), is(Property::intransitive),
                       is(Property::euclidean), is(Property::in_euclidean),
                       is(Property::acyclic)})});
  t.push_back({Subtype::symmetry,
               G::any({is(Property::asymmetric), is(Property::euclidean),
                       is(Property::acyclic)})});
  t.push_back({Subtype::asymmetry,
               G::any({is(Property::symmetric), is(Property::acyclic),
                       G::all({G::any({is(Property::transitive), is(Property::euclidean)}),
                               G::any({is(Property::irreflexive),
                                       is(Property::intransitive)})})})});
  t.push_back({Subtype::transitivity,
               G::any({is(Property::intransitive), is(Property::euclidean),
                       G::all({is(Property::connected), is(Property::symmetric)})})});
  t.push_back({Subtype::intransitivity,
               G::any({is(Property::transitive), is(Property::euclidean),
                       is(Property::dense),
                       G::all({is(Property::in_euclidean), is(Property::symmetric)})})});
  t.push_back({Subtype::euclideanity,
               G::any({is(Property::in_euclidean), is(Property::acyclic),
                       G::all({is(Property::connected), is(Property::symmetric)})})});
  t.push_back({Subtype::ineuclideanity,
               G::any({is(Property::euclidean),
                       G::all({is(Property::symmetric), is(Property::intransitive)})})});
  t.push_back({Subtype::acyclicity,
               G::any({is(Property::euclidean), is(Property::reflexive),
                       is(Property::null_identical), is(Property::symmetric),
                       G::all({is(Property::asymmetric), is(Property::transitive)})})});
  t.push_back({Subtype::equivalence,
               G::any({is(Property::irreflexive), is(Property::asymmetric),
                       is(Property::intransitive), is(Property::in_euclidean),
                       is(Property::acyclic)})});
  t.push_back({Subtype::density,
               G::any({is(Property::reflexive), is(Property::euclidean),
                       G::all({is(Property::symmetric), is(Property::connected)})})});
  return t;
}

}  // namespace

const std::string& to_string(Subtype s) { return kSubtypeNames[int(s)]; }

std::optional<Subtype> subtype_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kSubtypeCount; ++i) {
    if (kSubtypeNames[i] == name) return Subtype(int(i));
  }
  return std::nullopt;
}

std::vector<Subtype> all_subtypes() {
  std::vector<Subtype> v;
  v.reserve(kSubtypeCount);
  for (std::size_t i = 0; i < kSubtypeCount; ++i) v.push_back(Subtype(int(i)));
  return v;
}

const std::string& adjective(Property p) { return kAdjectives[int(p)]; }

GuardExpr GuardExpr::is(Property p) {
  GuardExpr e;
  e.kind_ = Kind::atom;
  e.atom_ = p;
  return e;
}

GuardExpr GuardExpr::any(std::vector<GuardExpr> children) {
  GuardExpr e;
  e.kind_ = Kind::any;
  e.children_ = std::move(children);
  return e;
}

GuardExpr GuardExpr::all(std::vector<GuardExpr> children) {
  GuardExpr e;
  e.kind_ = Kind::all;
  e.children_ = std::move(children);
  return e;
}

GuardExpr GuardExpr::negated(GuardExpr child) {
  GuardExpr e;
  e.kind_ = Kind::negate;
  e.children_.push_back(std::move(child));
  return e;
}

bool GuardExpr::eval(const PropertyFlags& declared) const {
  switch (kind_) {
    case Kind::atom:
      return declared[int(atom_)];
    case Kind::any:
      for (const auto& c : children_)
        if (c.eval(declared)) return true;
      return false;
    case Kind::all:
      for (const auto& c : children_)
        if (!c.eval(declared)) return false;
      return true;
    case Kind::negate:
      return !children_.front().eval(declared);
  }
  return false;
}

std::string GuardExpr::render() const {
  switch (kind_) {
    case Kind::atom:
      return adjective(atom_);
    case Kind::negate:
      return "not " + children_.front().render();
    case Kind::all: {
      std::string out;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += " and ";
        const auto& c = children_[i];
        if (c.kind() == Kind::any)
          out += "(" + c.render() + ")";
        else
          out += c.render();
      }
      return out;
    }
    case Kind::any: {
      std::string out;
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += " or ";
        out += children_[i].render();
      }
      return out;
    }
  }
  return {};
}

const std::vector<GuardSpec>& guard_table() {
  static const std::vector<GuardSpec> table = build_guard_table();
  return table;
}

const GuardExpr* guard_for(Subtype s) {
  Subtype base = strict_base(s);
  for (const auto& spec : guard_table()) {
    if (spec.subject == base) return &spec.skip;
  }
  return nullptr;
}

std::vector<Conflict> conflicts(const ConstraintSet& declared) {
  auto has = [&](Subtype s) { return declared.count(s) != 0; };
  std::vector<Conflict> out;
  auto emit = [&](Subtype a, Subtype b, const std::string& reason) {
    if (has(a) && has(b)) out.push_back({a, b, reason});
  };
  emit(Subtype::reflexivity, Subtype::irreflexivity, "reflexive excludes irreflexive");
  emit(Subtype::symmetry, Subtype::asymmetry, "symmetric excludes asymmetric");
  emit(Subtype::transitivity, Subtype::intransitivity,
       "transitive excludes intransitive");
  emit(Subtype::euclideanity, Subtype::ineuclideanity,
       "Euclidean excludes inEuclidean");
  emit(Subtype::euclideanity, Subtype::acyclicity, "Euclidean excludes acyclic");
  emit(Subtype::euclideanity, Subtype::asymmetry, "Euclidean excludes asymmetric");
  emit(Subtype::euclideanity, Subtype::irreflexivity,
       "Euclidean excludes irreflexive");
  emit(Subtype::euclideanity, Subtype::intransitivity,
       "Euclidean excludes intransitive");
  emit(Subtype::asymmetry, Subtype::connectivity, "asymmetric excludes connected");
  emit(Subtype::equivalence, Subtype::irreflexivity,
       "equivalence excludes irreflexive");
  emit(Subtype::equivalence, Subtype::asymmetry, "equivalence excludes asymmetric");
  emit(Subtype::equivalence, Subtype::intransitivity,
       "equivalence excludes intransitive");
  emit(Subtype::equivalence, Subtype::ineuclideanity,
       "equivalence excludes inEuclidean");
  emit(Subtype::equivalence, Subtype::acyclicity, "equivalence excludes acyclic");
  if (has(Subtype::ineuclideanity) && has(Subtype::symmetry) &&
      has(Subtype::connectivity)) {
    out.push_back({Subtype::ineuclideanity, Subtype::connectivity,
                   "inEuclidean and symmetric exclude connected"});
  }
  return out;
}

bool EnforcementPlan::has_conflicts() const {
  for (const auto& e : entries)
    if (e.decision == Decision::conflict) return true;
  return false;
}

std::string EnforcementPlan::render() const {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << to_string(e.subtype) << ": ";
    switch (e.decision) {
      case Decision::enforce:
        out << "enforce";
        break;
      case Decision::skip_redundant:
        out << "redundant(" << e.reason << ")";
        break;
      case Decision::conflict:
        out << "conflict(" << e.reason << ")";
        break;
    }
    out << '\n';
  }
  return out.str();
}

EnforcementPlan plan(const ConstraintSet& declared) {
  EnforcementPlan p;

  for (Subtype s : declared) {
    if (auto a = atom_of(s)) p.declared_bases[int(*a)] = true;
  }

  auto conf = conflicts(declared);
  std::set<Subtype> conflicted;
  std::map<Subtype, std::string> conflict_reason;
  for (const auto& c : conf) {
    for (Subtype s : {c.first, c.second}) {
      conflicted.insert(s);
      if (!conflict_reason.count(s)) conflict_reason[s] = c.reason;
    }
  }

  for (Subtype s : declared) {  // std::set iterates in canonical order
    PlanEntry e;
    e.subtype = s;
    if (conflicted.count(s)) {
      e.decision = Decision::conflict;
      e.reason = conflict_reason[s];
    } else if (const GuardExpr* skip = guard_for(s);
               skip && skip->eval(p.declared_bases)) {
      e.decision = Decision::skip_redundant;
      e.reason = skip->render();
    } else {
      e.decision = Decision::enforce;
    }
    p.entries.push_back(e);
  }

  if (!conf.empty()) return p;  // conflicted plans attach no handlers

  for (const auto& e : p.entries) {
    if (e.decision != Decision::enforce) continue;
    bool strict = !is_null_variant(e.subtype);
    for (Property g : groups_of(e.subtype)) {
      auto& h = p.handlers[int(g)];
      if (!h.attached) {
        h.attached = true;
        h.null_tolerant = !strict;
        h.reporter = e.subtype;
      } else if (strict) {
        h.null_tolerant = false;
      }
    }
  }
  return p;
}

}  // namespace dyad
