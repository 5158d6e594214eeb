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

// Event-driven enforcement engine. Rejecting handlers run before the
// mutation touches the store (so a rejected request changes nothing);
// generating handlers run after it, first as the per-event reaction and
// then, in fixpoint mode, as repeated passes until every attached
// generating handler is satisfied.

#include "dyad/engine.hpp"

#include <stdexcept>

namespace dyad {

namespace {
constexpr Cell kNull = std::nullopt;
}

Mutation Mutation::addNode(std::string label) {
  Mutation m;
  m.kind = Kind::add_node;
  m.label = std::move(label);
  return m;
}

Mutation Mutation::insertRow(Cell f, Cell g) {
  Mutation m;
  m.kind = Kind::insert_row;
  m.f = f;
  m.g = g;
  return m;
}

Mutation Mutation::updateRow(RowId row, Cell f, Cell g) {
  Mutation m;
  m.kind = Kind::update_row;
  m.row = row;
  m.f = f;
  m.g = g;
  return m;
}

Mutation Mutation::deleteRow(RowId row) {
  Mutation m;
  m.kind = Kind::delete_row;
  m.row = row;
  return m;
}

std::string reject_message(Property p) {
  return "Request rejected: f•g " + adjective(p) + "!";
}

std::string reject_message_connected_and_symmetric() {
  return "Request rejected: f•g connected and symmetric!";
}

Engine::Engine(Store& store, EnforcementPlan plan, EngineConfig config)
    : store_(store), plan_(std::move(plan)), config_(config) {}

Rejection Engine::reject(Property p) const { return {p, reject_message(p)}; }

Outcome Engine::apply(const Mutation& m) {
  if (plan_.has_conflicts())
    throw std::logic_error("cannot enforce a plan with conflicting constraints");

  const bool fixpoint = config_.propagation == Propagation::fixpoint;
  auto require_cells = [&](const Cell& f, const Cell& g) {
    if (f && !store_.has_node(*f))
      throw UnknownNode("unknown node id: " + std::to_string(*f));
    if (g && !store_.has_node(*g))
      throw UnknownNode("unknown node id: " + std::to_string(*g));
  };

  Outcome out;
  switch (m.kind) {
    case Mutation::Kind::add_node: {
      NodeId id = store_.add_node(m.label);
      out.accepted = true;
      out.node = id;
      on_node_added(id, out.generated);
      if (fixpoint) chase(out.generated);
      return out;
    }
    case Mutation::Kind::insert_row: {
      require_cells(m.f, m.g);
      if (auto rej = validate_save(std::nullopt, m.f, m.g)) {
        out.rejection = rej;
        return out;
      }
      RowId id = store_.insert_row_raw(m.f, m.g);
      out.accepted = true;
      out.row = id;
      propagate_after_insert(id, m.f, m.g, out.generated);
      if (fixpoint) chase(out.generated);
      return out;
    }
    case Mutation::Kind::update_row: {
      const Row& r = store_.row(m.row);
      require_cells(m.f, m.g);
      Cell fo = r.f, go = r.g;
      if (fo == m.f && go == m.g) {
        // Writing back the identical cells is a no-op: accepted without
        // consulting any handler and without propagation.
        out.accepted = true;
        out.row = m.row;
        return out;
      }
      if (auto rej = validate_save(m.row, m.f, m.g)) {
        out.rejection = rej;
        return out;
      }
      store_.update_row_raw(m.row, m.f, m.g);
      out.accepted = true;
      out.row = m.row;
      propagate_after_update(m.row, fo, go, m.f, m.g, out.generated);
      if (fixpoint) chase(out.generated);
      return out;
    }
    case Mutation::Kind::delete_row: {
      const Row& r = store_.row(m.row);
      Cell fo = r.f, go = r.g;
      if (auto rej = validate_delete(r)) {
        out.rejection = rej;
        return out;
      }
      store_.delete_row_raw(m.row);
      out.accepted = true;
      out.row = m.row;
      propagate_after_delete(fo, go, out.generated);
      if (fixpoint) chase(out.generated);
      return out;
    }
  }
  throw std::logic_error("unreachable mutation kind");
}

std::optional<Rejection> Engine::validate_save(std::optional<RowId> target,
                                               const Cell& f, const Cell& g) const {
  const bool is_update = target.has_value();
  Cell fo, go;
  if (is_update) {
    const Row& r = store_.row(*target);
    fo = r.f;
    go = r.g;
  }

  // Post-state membership: a pair is in the would-be image when some row
  // other than the edited one carries it, or it is the incoming pair.
  const ValuePair incoming{f, g};
  auto in_excl = [&](const ValuePair& p) {
    return store_.has_pair_excluding(p, target);
  };
  auto in_post = [&](const ValuePair& p) { return p == incoming || in_excl(p); };

  // Connectivity combined with symmetry freezes updates except for
  // blanking one side while keeping the other.
  if (is_update && attached(Property::connected) &&
      plan_.declared_bases[int(Property::symmetric)]) {
    bool keep_f = same_node(f, fo) && !g;
    bool keep_g = !f && same_node(g, go);
    if (!keep_f && !keep_g)
      return Rejection{Property::connected, reject_message_connected_and_symmetric()};
  }

  // Reflexivity restricts updates of rows that witness a member.
  if (is_update && attached(Property::reflexive)) {
    if (same_node(fo, go)) {
      bool allowed = (same_node(f, fo) && !g) || (!f && same_node(g, go)) ||
                     (!f && !g);
      if (!allowed) return reject(Property::reflexive);
    } else if (fo.has_value() != go.has_value()) {
      NodeId x = fo ? *fo : *go;
      bool allowed = f && g && *f == x && *g == x;
      if (!allowed) return reject(Property::reflexive);
    }
    // Fully-null rows and proper non-diagonal pairs stay unrestricted.
  }

  if (attached(Property::null_identical) && f && g && *f != *g)
    return reject(Property::null_identical);

  if (attached(Property::irreflexive) && same_node(f, g))
    return reject(Property::irreflexive);

  if (attached(Property::asymmetric) && f && g) {
    if (*f == *g || in_excl({g, f})) return reject(Property::asymmetric);
  }

  // Transitivity freezes rows acting as the composite of a stored chain.
  if (is_update && attached(Property::transitive) && fo && go && *fo != *go) {
    for (const auto& [id, node] : store_.nodes()) {
      Cell z{id};
      if (store_.has_pair({fo, z}) && store_.has_pair({z, go}))
        return reject(Property::transitive);
    }
  }

  if (attached(Property::intransitive) && f && g) {
    for (const auto& [id, node] : store_.nodes()) {
      Cell z{id};
      // The incoming pair as the composite of a chain, as the first leg
      // of a chain whose composite exists, or as the second leg of one.
      if (in_post({f, z}) && in_post({z, g})) return reject(Property::intransitive);
      if (in_post({g, z}) && in_post({f, z})) return reject(Property::intransitive);
      if (in_post({z, f}) && in_post({z, g})) return reject(Property::intransitive);
    }
  }

  // Euclideanity freezes rows acting as the composite of stored legs;
  // a diagonal row is always its own composite, so diagonals are frozen.
  if (is_update && attached(Property::euclidean) && fo && go) {
    for (const auto& [id, node] : store_.nodes()) {
      Cell z{id};
      if (store_.has_pair({z, fo}) && store_.has_pair({z, go}))
        return reject(Property::euclidean);
    }
  }

  if (attached(Property::in_euclidean) && f && g) {
    for (const auto& [id, node] : store_.nodes()) {
      Cell z{id};
      // The incoming pair as the composite of stored legs, or as a leg
      // whose composite (in either orientation) is stored.
      if (in_post({z, f}) && in_post({z, g})) return reject(Property::in_euclidean);
      if (in_post({f, z}) && in_post({g, z})) return reject(Property::in_euclidean);
      if (in_post({f, z}) && in_post({z, g})) return reject(Property::in_euclidean);
    }
  }

  if (attached(Property::acyclic) &&
      is_cycle(store_, target, f, g, config_.null_cycles))
    return reject(Property::acyclic);

  if (attached(Property::dense)) {
    bool null_bearing = !f || !g;
    if (is_update || !null_bearing) {
      PairSet nn;
      for (const auto& [p, carriers] : store_.image()) {
        if (!p.first || !p.second) continue;
        if (in_excl(p)) nn.insert(p);
      }
      if (f && g) nn.insert({f, g});
      if (nn.size() >= 2) {
        for (const auto& p : nn) {
          bool found = false;
          for (const auto& [id, node] : store_.nodes()) {
            Cell y{id};
            if (in_post({p.first, y}) && in_post({y, p.second})) {
              found = true;
              break;
            }
          }
          if (!found) return reject(Property::dense);
        }
      }
    }
  }

  return std::nullopt;
}

std::optional<Rejection> Engine::validate_delete(const Row& r) const {
  const Cell& f = r.f;
  const Cell& g = r.g;

  if (attached(Property::connected) &&
      plan_.declared_bases[int(Property::symmetric)]) {
    // Combined with symmetry, every row naming a member is load-bearing.
    if (f || g)
      return Rejection{Property::connected, reject_message_connected_and_symmetric()};
  } else if (attached(Property::connected)) {
    if (f && g && *f != *g && !store_.has_pair({g, f}) &&
        !store_.has_pair({g, kNull}) && !store_.has_pair({kNull, f}))
      return reject(Property::connected);
  }

  // Reflexivity: a witness row may only go when another witness form
  // for the same member remains.
  if (attached(Property::reflexive)) {
    if (same_node(f, g)) {
      if (!store_.has_pair({f, kNull}) && !store_.has_pair({kNull, f}))
        return reject(Property::reflexive);
    } else if (f && !g) {
      if (!store_.has_pair({f, f}) && !store_.has_pair({kNull, f}))
        return reject(Property::reflexive);
    } else if (!f && g) {
      if (!store_.has_pair({g, g}) && !store_.has_pair({g, kNull}))
        return reject(Property::reflexive);
    }
  }

  if (attached(Property::transitive) && f && g) {
    for (const auto& [id, node] : store_.nodes()) {
      Cell z{id};
      if (store_.has_pair({f, z}) && store_.has_pair({z, g}))
        return reject(Property::transitive);
    }
  }

  if (attached(Property::euclidean) && f && g) {
    for (const auto& [id, node] : store_.nodes()) {
      Cell z{id};
      if (store_.has_pair({z, f}) && store_.has_pair({z, g}))
        return reject(Property::euclidean);
    }
  }

  if (attached(Property::dense)) {
    PairSet nn;
    for (const auto& [p, carriers] : store_.image()) {
      if (!p.first || !p.second) continue;
      if (store_.pair_count_excluding(p, r.id) > 0) nn.insert(p);
    }
    if (nn.size() >= 2) {
      for (const auto& p : nn) {
        bool found = false;
        for (const auto& [id, node] : store_.nodes()) {
          Cell y{id};
          if (store_.pair_count_excluding({p.first, y}, r.id) > 0 &&
              store_.pair_count_excluding({y, p.second}, r.id) > 0) {
            found = true;
            break;
          }
        }
        if (!found) return reject(Property::dense);
      }
    }
  }

  return std::nullopt;
}

RowId Engine::add_generated(const Cell& f, const Cell& g,
                            std::vector<RowChange>& generated) {
  RowId id = store_.insert_row_raw(f, g);
  generated.push_back({RowChange::Kind::added, id, f, g});
  return id;
}

void Engine::propagate_after_insert(RowId id, const Cell& f, const Cell& g,
                                    std::vector<RowChange>& generated) {
  (void)id;
  if (attached(Property::symmetric) &&
      !plan_.declared_bases[int(Property::connected)]) {
    if (!same_node(f, g)) {
      bool escape = tolerant(Property::symmetric) &&
                    (store_.has_pair({f, kNull}) || store_.has_pair({kNull, g}));
      if (!store_.has_pair({g, f}) && !escape) add_generated(g, f, generated);
    }
  }

  if (attached(Property::transitive) && f && g && *f != *g) {
    std::vector<Cell> succ;  // successors of g, snapshot before adding
    for (const auto& [p, carriers] : store_.image()) {
      if (p.first && p.second && *p.first == *g && *p.second != *g)
        succ.push_back(p.second);
    }
    for (const Cell& z : succ) {
      bool escape = tolerant(Property::transitive) &&
                    (store_.has_pair({f, kNull}) || store_.has_pair({kNull, z}));
      if (!store_.has_pair({f, z}) && !escape) add_generated(f, z, generated);
    }
  }

  if (attached(Property::euclidean) && f && g && *f != *g) {
    std::vector<Cell> succ;  // successors of f, including the new row
    for (const auto& [p, carriers] : store_.image()) {
      if (p.first && p.second && *p.first == *f && *p.second != *f)
        succ.push_back(p.second);
    }
    for (const Cell& z : succ) {
      bool escape = tolerant(Property::euclidean) &&
                    (store_.has_pair({g, kNull}) || store_.has_pair({kNull, z}));
      if (!store_.has_pair({g, z}) && !escape) add_generated(g, z, generated);
    }
  }
}

void Engine::propagate_after_update(RowId id, const Cell& fo, const Cell& go,
                                    const Cell& f, const Cell& g,
                                    std::vector<RowChange>& generated) {
  if (attached(Property::connected) &&
      !plan_.declared_bases[int(Property::symmetric)]) {
    if (!same_node(fo, go) && f && g && !store_.has_pair({go, fo}))
      add_generated(go, fo, generated);
  }

  if (attached(Property::symmetric) &&
      !plan_.declared_bases[int(Property::connected)]) {
    bool new_diag = same_node(f, g);
    bool old_diag = same_node(fo, go);
    if (!new_diag && !old_diag) {
      // Redirect the old counterpart row to mirror the new pair.
      auto rid2 = store_.first_other_row_with_pair({go, fo}, id);
      if (rid2) {
        store_.update_row_raw(*rid2, g, f);
        generated.push_back({RowChange::Kind::replaced, *rid2, g, f});
      } else if (!store_.has_pair({g, f})) {
        add_generated(g, f, generated);
      }
    } else if (new_diag && !old_diag) {
      auto rid2 = store_.first_other_row_with_pair({go, fo}, id);
      if (rid2) {
        store_.delete_row_raw(*rid2);
        generated.push_back({RowChange::Kind::removed, *rid2, go, fo});
      }
    } else if (!new_diag && old_diag) {
      bool escape = tolerant(Property::symmetric) &&
                    (store_.has_pair({f, kNull}) || store_.has_pair({kNull, g}));
      if (!store_.has_pair({g, f}) && !escape) add_generated(g, f, generated);
    }
  }

  // A diagonal row split into a proper pair re-links its neighbourhood.
  if (attached(Property::transitive) && same_node(fo, go) && f && g &&
      *f != *g) {
    std::vector<Cell> zs;
    for (const auto& [p, carriers] : store_.image()) {
      if (p.first && p.second && *p.first == *f && *p.second != *f &&
          store_.pair_count_excluding(p, id) > 0)
        zs.push_back(p.second);
    }
    for (const Cell& z : zs)
      if (!store_.has_pair({z, g})) add_generated(z, g, generated);
    zs.clear();
    for (const auto& [p, carriers] : store_.image()) {
      if (p.first && p.second && *p.second == *g && *p.first != *g &&
          store_.pair_count_excluding(p, id) > 0)
        zs.push_back(p.first);
    }
    for (const Cell& z : zs)
      if (!store_.has_pair({f, z})) add_generated(f, z, generated);
  }
}

void Engine::propagate_after_delete(const Cell& fo, const Cell& go,
                                    std::vector<RowChange>& generated) {
  if (attached(Property::symmetric) &&
      !plan_.declared_bases[int(Property::connected)] && fo && go &&
      *fo != *go) {
    auto rid = store_.first_row_with_pair({go, fo});
    if (rid) {
      store_.delete_row_raw(*rid);
      generated.push_back({RowChange::Kind::removed, *rid, go, fo});
    }
  }
}

void Engine::on_node_added(NodeId id, std::vector<RowChange>& generated) {
  Cell cx{id};
  if (attached(Property::connected)) {
    for (const auto& [label, yid] : store_.labels()) {
      if (yid == id) continue;
      Cell cy{yid};
      if (!store_.has_pair({cx, cy}) && !store_.has_pair({cy, cx})) {
        add_generated(cx, cy, generated);
        if (plan_.declared_bases[int(Property::symmetric)] &&
            !store_.has_pair({cy, cx}))
          add_generated(cy, cx, generated);
      }
    }
  }
  if (attached(Property::reflexive)) {
    if (!store_.has_pair({cx, cx})) add_generated(cx, cx, generated);
  }
}

void Engine::chase(std::vector<RowChange>& generated) {
  bool changed = true;
  while (changed) {
    changed = false;

    if (attached(Property::connected)) {
      std::vector<ValuePair> add;
      const auto& labels = store_.labels();
      for (auto it = labels.begin(); it != labels.end(); ++it) {
        for (auto jt = std::next(it); jt != labels.end(); ++jt) {
          Cell x{it->second}, y{jt->second};
          if (!store_.has_pair({x, y}) && !store_.has_pair({y, x}))
            add.push_back({x, y});
        }
      }
      for (const auto& p : add) {
        add_generated(p.first, p.second, generated);
        changed = true;
      }
    }

    if (attached(Property::reflexive)) {
      std::vector<ValuePair> add;
      if (tolerant(Property::reflexive)) {
        for (const auto& [label, yid] : store_.labels()) {
          Cell y{yid};
          if (!store_.has_pair({y, y}) && !store_.has_pair({y, kNull}) &&
              !store_.has_pair({kNull, y}))
            add.push_back({y, y});
        }
      } else {
        std::set<NodeId> active;
        for (const auto& [p, carriers] : store_.image()) {
          if (p.first) active.insert(*p.first);
          if (p.second) active.insert(*p.second);
        }
        for (const auto& [label, yid] : store_.labels()) {
          Cell y{yid};
          if (active.count(yid) && !store_.has_pair({y, y}))
            add.push_back({y, y});
        }
      }
      for (const auto& p : add) {
        add_generated(p.first, p.second, generated);
        changed = true;
      }
    }

    if (attached(Property::symmetric)) {
      std::vector<ValuePair> add;
      for (const auto& [p, carriers] : store_.image()) {
        if (!p.first || !p.second) continue;
        if (store_.has_pair({p.second, p.first})) continue;
        if (tolerant(Property::symmetric) &&
            (store_.has_pair({p.first, kNull}) ||
             store_.has_pair({kNull, p.second})))
          continue;
        add.push_back({p.second, p.first});
      }
      for (const auto& p : add) {
        add_generated(p.first, p.second, generated);
        changed = true;
      }
    }

    if (attached(Property::transitive)) {
      std::vector<ValuePair> add;
      PairSet pending;
      for (const auto& [p1, c1] : store_.image()) {
        if (!p1.first || !p1.second) continue;
        for (const auto& [p2, c2] : store_.image()) {
          if (!p2.first || !p2.second) continue;
          if (*p1.second != *p2.first) continue;
          ValuePair comp{p1.first, p2.second};
          if (store_.has_pair(comp) || pending.count(comp)) continue;
          if (tolerant(Property::transitive) &&
              (store_.has_pair({p1.first, kNull}) ||
               store_.has_pair({kNull, p2.second})))
            continue;
          pending.insert(comp);
          add.push_back(comp);
        }
      }
      for (const auto& p : add) {
        add_generated(p.first, p.second, generated);
        changed = true;
      }
    }

    if (attached(Property::euclidean)) {
      std::vector<ValuePair> add;
      PairSet pending;
      for (const auto& [p1, c1] : store_.image()) {
        if (!p1.first || !p1.second) continue;
        for (const auto& [p2, c2] : store_.image()) {
          if (!p2.first || !p2.second) continue;
          if (*p1.first != *p2.first) continue;
          ValuePair comp{p1.second, p2.second};
          if (store_.has_pair(comp) || pending.count(comp)) continue;
          if (tolerant(Property::euclidean) &&
              (store_.has_pair({p1.second, kNull}) ||
               store_.has_pair({kNull, p2.second})))
            continue;
          pending.insert(comp);
          add.push_back(comp);
        }
      }
      for (const auto& p : add) {
        add_generated(p.first, p.second, generated);
        changed = true;
      }
    }
  }
}

}  // namespace dyad
