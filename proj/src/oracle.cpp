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

// Definitional constraint checker. Every decision below is a direct
// brute-force reading of the constraint definition over the image, in
// label order, reporting the lexicographically smallest counterexample.

#include "dyad/oracle.hpp"

#include <deque>
#include <map>
#include <set>

namespace dyad {

namespace {

using LabelPair = std::pair<std::string, std::string>;

struct View {
  // Full image keyed by label text; null cells render as "null".
  std::set<LabelPair> im;
  // Non-null pairs only, plus label-ordered successor lists.
  std::set<LabelPair> nn;
  std::map<std::string, std::set<std::string>> succ;
  // Active members: labels appearing in some non-null cell.
  std::set<std::string> active;
  // All node labels.
  std::set<std::string> members;

  explicit View(const Store& store) {
    for (const auto& [label, id] : store.labels()) members.insert(label);
    for (const auto& [pair, carriers] : store.image()) {
      std::string a = pair.first ? store.label(*pair.first) : "null";
      std::string b = pair.second ? store.label(*pair.second) : "null";
      im.insert({a, b});
      if (pair.first) active.insert(a);
      if (pair.second) active.insert(b);
      if (pair.first && pair.second) {
        nn.insert({a, b});
        succ[a].insert(b);
      }
    }
  }

  bool has(const std::string& a, const std::string& b) const {
    return im.count({a, b}) != 0;
  }
};

std::string tuple1(const std::string& a) { return "(" + a + ")"; }
std::string tuple2(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}
std::string tuple3(const std::string& a, const std::string& b,
                   const std::string& c) {
  return "(" + a + "," + b + "," + c + ")";
}

Verdict ok(Subtype s) { return {s, true, ""}; }
Verdict fail(Subtype s, std::string witness) { return {s, false, std::move(witness)}; }

Verdict check_connectivity(const View& v, Subtype s) {
  for (const auto& x : v.members) {
    for (const auto& y : v.members) {
      if (x == y) continue;
      if (!v.has(x, y) && !v.has(y, x)) return fail(s, tuple2(x, y));
    }
  }
  return ok(s);
}

Verdict check_reflexivity(const View& v, Subtype s) {
  for (const auto& y : v.active) {
    if (!v.has(y, y)) return fail(s, tuple1(y));
  }
  return ok(s);
}

Verdict check_null_reflexivity(const View& v, Subtype s) {
  for (const auto& y : v.members) {
    if (!v.has(y, y) && !v.has(y, "null") && !v.has("null", y))
      return fail(s, tuple1(y));
  }
  return ok(s);
}

Verdict check_null_identity(const View& v, Subtype s) {
  for (const auto& [a, b] : v.nn) {
    if (a != b) return fail(s, tuple2(a, b));
  }
  return ok(s);
}

Verdict check_irreflexivity(const View& v, Subtype s) {
  for (const auto& [a, b] : v.nn) {
    if (a == b) return fail(s, tuple2(a, b));
  }
  return ok(s);
}

Verdict check_symmetry(const View& v, Subtype s, bool tolerate_nulls) {
  for (const auto& [a, b] : v.nn) {
    if (v.has(b, a)) continue;
    if (tolerate_nulls && (v.has(a, "null") || v.has("null", b))) continue;
    return fail(s, tuple2(a, b));
  }
  return ok(s);
}

Verdict check_asymmetry(const View& v, Subtype s) {
  for (const auto& [a, b] : v.nn) {
    if (v.has(b, a)) return fail(s, tuple2(a, b));
  }
  return ok(s);
}

Verdict check_transitivity(const View& v, Subtype s, bool tolerate_nulls) {
  for (const auto& [u, vs] : v.succ) {
    for (const auto& m : vs) {
      auto it = v.succ.find(m);
      if (it == v.succ.end()) continue;
      for (const auto& w : it->second) {
        if (v.has(u, w)) continue;
        if (tolerate_nulls && (v.has(u, "null") || v.has("null", w))) continue;
        return fail(s, tuple3(u, m, w));
      }
    }
  }
  return ok(s);
}

Verdict check_intransitivity(const View& v, Subtype s) {
  for (const auto& [u, vs] : v.succ) {
    for (const auto& m : vs) {
      auto it = v.succ.find(m);
      if (it == v.succ.end()) continue;
      for (const auto& w : it->second) {
        if (v.has(u, w)) return fail(s, tuple3(u, m, w));
      }
    }
  }
  return ok(s);
}

Verdict check_euclideanity(const View& v, Subtype s, bool tolerate_nulls) {
  for (const auto& [u, vs] : v.succ) {
    for (const auto& a : vs) {
      for (const auto& b : vs) {
        if (v.has(a, b)) continue;
        if (tolerate_nulls && (v.has(a, "null") || v.has("null", b))) continue;
        return fail(s, tuple3(u, a, b));
      }
    }
  }
  return ok(s);
}

Verdict check_ineuclideanity(const View& v, Subtype s) {
  for (const auto& [u, vs] : v.succ) {
    for (const auto& a : vs) {
      for (const auto& b : vs) {
        if (v.has(a, b)) return fail(s, tuple3(u, a, b));
      }
    }
  }
  return ok(s);
}

Verdict check_acyclicity(const View& v, Subtype s) {
  // Reachability closure per start node, label order; a node on a cycle
  // reaches itself. The witness is the shortest label-ordered cycle from
  // the smallest such node, reconstructed from breadth-first parents.
  for (const auto& start : v.members) {
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue;
    queue.push_back(start);
    std::set<std::string> expanded;
    while (!queue.empty()) {
      std::string x = queue.front();
      queue.pop_front();
      if (expanded.count(x)) continue;
      expanded.insert(x);
      auto it = v.succ.find(x);
      if (it == v.succ.end()) continue;
      for (const auto& y : it->second) {
        if (y == start) {
          std::vector<std::string> path = {start};
          std::string cur = x;
          while (cur != start) {
            path.push_back(cur);
            cur = parent.at(cur);
          }
          std::string witness = "(" + start;
          for (auto rit = path.rbegin(); rit != path.rend(); ++rit) {
            if (*rit != start) witness += "," + *rit;
          }
          witness += "," + start + ")";
          return fail(s, witness);
        }
        if (!parent.count(y) && !expanded.count(y)) {
          parent[y] = x;
          queue.push_back(y);
        }
      }
    }
  }
  return ok(s);
}

Verdict check_density(const View& v, Subtype s) {
  if (v.nn.size() < 2) return ok(s);
  for (const auto& [x, z] : v.nn) {
    bool found = false;
    for (const auto& y : v.members) {
      if (v.has(x, y) && v.has(y, z)) {
        found = true;
        break;
      }
    }
    if (!found) return fail(s, tuple2(x, z));
  }
  return ok(s);
}

}  // namespace

std::string Verdict::render() const {
  std::string out = to_string(subtype) + ": ";
  if (holds) return out + "OK";
  return out + "FAIL witness=" + witness;
}

Verdict holds(const Store& store, Subtype subtype) {
  View v(store);
  switch (subtype) {
    case Subtype::connectivity:
      return check_connectivity(v, subtype);
    case Subtype::reflexivity:
      return check_reflexivity(v, subtype);
    case Subtype::null_reflexivity:
      return check_null_reflexivity(v, subtype);
    case Subtype::null_identity:
      return check_null_identity(v, subtype);
    case Subtype::irreflexivity:
      return check_irreflexivity(v, subtype);
    case Subtype::symmetry:
      return check_symmetry(v, subtype, false);
    case Subtype::null_symmetry:
      return check_symmetry(v, subtype, true);
    case Subtype::asymmetry:
      return check_asymmetry(v, subtype);
    case Subtype::transitivity:
      return check_transitivity(v, subtype, false);
    case Subtype::null_transitivity:
      return check_transitivity(v, subtype, true);
    case Subtype::intransitivity:
      return check_intransitivity(v, subtype);
    case Subtype::euclideanity:
      return check_euclideanity(v, subtype, false);
    case Subtype::null_euclideanity:
      return check_euclideanity(v, subtype, true);
    case Subtype::ineuclideanity:
      return check_ineuclideanity(v, subtype);
    case Subtype::equivalence: {
      Verdict r = check_reflexivity(v, subtype);
      if (!r.holds) return r;
      return check_euclideanity(v, subtype, false);
    }
    case Subtype::null_equivalence: {
      Verdict r = check_null_reflexivity(v, subtype);
      if (!r.holds) return r;
      return check_euclideanity(v, subtype, true);
    }
    case Subtype::acyclicity:
      return check_acyclicity(v, subtype);
    case Subtype::density:
      return check_density(v, subtype);
  }
  return {subtype, false, "(unreachable)"};
}

std::vector<Verdict> holds_all(const Store& store, const ConstraintSet& declared) {
  std::vector<Verdict> out;
  out.reserve(declared.size());
  for (Subtype s : declared) out.push_back(holds(store, s));
  return out;
}

}  // namespace dyad
