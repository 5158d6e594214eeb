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

#include "dyad/engine.hpp"

#include <doctest.h>

#include <random>

#include "dyad/io.hpp"
#include "dyad/oracle.hpp"
#include "support/random_ops.hpp"

using namespace dyad;

namespace {

struct Rig {
  Store store;
  std::vector<NodeId> ids;
  Engine engine;

  Rig(const ConstraintSet& declared, int nodes = 0, EngineConfig config = {})
      : engine(store, plan(declared), config) {
    for (int i = 0; i < nodes; ++i)
      ids.push_back(store.add_node(std::string(1, char('a' + i))));
  }

  Cell cell(int i) const { return Cell(ids[std::size_t(i)]); }

  Outcome insert(int f, int g) {
    return engine.apply(Mutation::insertRow(cell(f), cell(g)));
  }
  Outcome insert(Cell f, Cell g) {
    return engine.apply(Mutation::insertRow(f, g));
  }
  Outcome update(RowId row, Cell f, Cell g) {
    return engine.apply(Mutation::updateRow(row, f, g));
  }
  Outcome erase(RowId row) { return engine.apply(Mutation::deleteRow(row)); }

  PairSet image() const {
    PairSet out;
    for (const auto& [p, carriers] : store.image()) out.insert(p);
    return out;
  }
};

std::string msg(const Outcome& o) {
  REQUIRE(!o.accepted);
  REQUIRE(o.rejection.has_value());
  return o.rejection->message;
}

}  // namespace

TEST_CASE("rejection messages use the property adjectives verbatim") {
  CHECK(reject_message(Property::null_identical) ==
        "Request rejected: f•g null-identical!");
  CHECK(reject_message(Property::irreflexive) ==
        "Request rejected: f•g irreflexive!");
  CHECK(reject_message(Property::asymmetric) ==
        "Request rejected: f•g asymmetric!");
  CHECK(reject_message(Property::intransitive) ==
        "Request rejected: f•g intransitive!");
  CHECK(reject_message(Property::in_euclidean) ==
        "Request rejected: f•g inEuclidean!");
  CHECK(reject_message(Property::euclidean) ==
        "Request rejected: f•g Euclidean!");
  CHECK(reject_message(Property::acyclic) == "Request rejected: f•g acyclic!");
  CHECK(reject_message(Property::dense) == "Request rejected: f•g dense!");
  CHECK(reject_message_connected_and_symmetric() ==
        "Request rejected: f•g connected and symmetric!");
}

TEST_CASE("a conflicted plan refuses to run") {
  Store s;
  Engine e(s, plan({Subtype::reflexivity, Subtype::irreflexivity}));
  CHECK_THROWS_AS(e.apply(Mutation::addNode("a")), std::logic_error);
}

TEST_CASE("plumbing failures throw and leave the store untouched") {
  Rig rig({Subtype::symmetry}, 2);
  CHECK_THROWS_AS(rig.engine.apply(Mutation::insertRow(Cell(99), rig.cell(0))),
                  UnknownNode);
  CHECK_THROWS_AS(rig.engine.apply(Mutation::updateRow(7, rig.cell(0), {})),
                  UnknownRow);
  CHECK_THROWS_AS(rig.engine.apply(Mutation::deleteRow(7)), UnknownRow);
  CHECK_THROWS_AS(rig.engine.apply(Mutation::addNode("a")), DuplicateLabel);
  CHECK(rig.store.rows().empty());
  CHECK(rig.store.next_row_id() == 1);
}

TEST_CASE("adding a member generates its missing links and loop") {
  SUBCASE("connectivity links the newcomer to everyone") {
    Rig rig({Subtype::connectivity});
    Outcome oa = rig.engine.apply(Mutation::addNode("a"));
    CHECK(oa.generated.empty());
    Outcome ob = rig.engine.apply(Mutation::addNode("b"));
    REQUIRE(ob.generated.size() == 1);
    Cell a = Cell(*oa.node), b = Cell(*ob.node);
    CHECK(rig.image() == PairSet{{b, a}});
    Outcome oc = rig.engine.apply(Mutation::addNode("c"));
    CHECK(oc.generated.size() == 2);
    Cell c = Cell(*oc.node);
    CHECK(rig.image() == PairSet{{b, a}, {c, a}, {c, b}});
  }
  SUBCASE("connectivity with symmetry links both directions") {
    Rig rig({Subtype::connectivity, Subtype::symmetry});
    rig.engine.apply(Mutation::addNode("a"));
    Outcome ob = rig.engine.apply(Mutation::addNode("b"));
    CHECK(ob.generated.size() == 2);
    Cell a = Cell(*rig.store.find_node("a")), b = Cell(*rig.store.find_node("b"));
    CHECK(rig.image() == PairSet{{b, a}, {a, b}});
  }
  SUBCASE("reflexivity adds the loop row") {
    Rig rig({Subtype::reflexivity});
    Outcome oa = rig.engine.apply(Mutation::addNode("a"));
    REQUIRE(oa.generated.size() == 1);
    Cell a = Cell(*rig.store.find_node("a"));
    CHECK(rig.image() == PairSet{{a, a}});
  }
}

TEST_CASE("symmetry maintains the counterpart row through its life cycle") {
  Rig rig({Subtype::symmetry}, 4);
  Cell a = rig.cell(0), b = rig.cell(1), c = rig.cell(2), d = rig.cell(3);

  Outcome o1 = rig.insert(0, 1);  // (a,b) -> generates (b,a)
  REQUIRE(o1.generated.size() == 1);
  CHECK(o1.generated[0].kind == RowChange::Kind::added);
  RowId r1 = *o1.row, r2 = o1.generated[0].row;
  CHECK(rig.image() == PairSet{{a, b}, {b, a}});

  // Repointing the pair drags the counterpart along.
  Outcome o2 = rig.update(r1, a, c);
  REQUIRE(o2.generated.size() == 1);
  CHECK(o2.generated[0].kind == RowChange::Kind::replaced);
  CHECK(o2.generated[0].row == r2);
  CHECK(rig.image() == PairSet{{a, c}, {c, a}});

  // Collapsing to a diagonal removes the counterpart.
  Outcome o3 = rig.update(r1, d, d);
  REQUIRE(o3.generated.size() == 1);
  CHECK(o3.generated[0].kind == RowChange::Kind::removed);
  CHECK(o3.generated[0].row == r2);
  CHECK(rig.image() == PairSet{{d, d}});

  // Splitting a diagonal creates a fresh counterpart.
  Outcome o4 = rig.update(r1, a, b);
  REQUIRE(o4.generated.size() == 1);
  CHECK(o4.generated[0].kind == RowChange::Kind::added);
  RowId r3 = o4.generated[0].row;
  CHECK(rig.image() == PairSet{{a, b}, {b, a}});

  // Deleting one side deletes the mirror row.
  Outcome o5 = rig.erase(r1);
  REQUIRE(o5.generated.size() == 1);
  CHECK(o5.generated[0].kind == RowChange::Kind::removed);
  CHECK(o5.generated[0].row == r3);
  CHECK(rig.store.rows().empty());
}

TEST_CASE("a duplicate insert generates nothing new") {
  Rig rig({Subtype::symmetry}, 2);
  CHECK(rig.insert(0, 1).generated.size() == 1);
  CHECK(rig.insert(0, 1).generated.empty());
  CHECK(rig.store.rows().size() == 3);
}

TEST_CASE("transitivity closes chains to a fixpoint") {
  Rig rig({Subtype::transitivity}, 4);
  Cell a = rig.cell(0), b = rig.cell(1), c = rig.cell(2), d = rig.cell(3);
  CHECK(rig.insert(0, 1).generated.empty());
  Outcome o2 = rig.insert(1, 2);
  REQUIRE(o2.generated.size() == 1);
  CHECK(rig.image() == PairSet{{a, b}, {b, c}, {a, c}});
  rig.insert(2, 3);
  CHECK(rig.image() ==
        PairSet{{a, b}, {b, c}, {c, d}, {a, c}, {a, d}, {b, d}});
}

TEST_CASE("single-pass propagation only reacts forward") {
  EngineConfig single{Propagation::single_pass, NullCyclePolicy::never_cycles};
  Rig rig({Subtype::transitivity}, 3, single);
  Cell a = rig.cell(0), b = rig.cell(1), c = rig.cell(2);
  rig.insert(1, 2);  // (b,c)
  Outcome o = rig.insert(0, 1);  // (a,b) extends through (b,c)
  REQUIRE(o.generated.size() == 1);
  CHECK(rig.image() == PairSet{{a, b}, {b, c}, {a, c}});
  // The reverse order leaves the chain open: nothing looks backwards.
  Rig rig2({Subtype::transitivity}, 3, single);
  rig2.insert(0, 1);
  CHECK(rig2.insert(1, 2).generated.empty());
  CHECK(rig2.image() == PairSet{{a, b}, {b, c}});
}

TEST_CASE("euclideanity reacts to an insert with its sibling composites") {
  SUBCASE("single pass generates the sibling composites of the new row") {
    EngineConfig single{Propagation::single_pass, NullCyclePolicy::never_cycles};
    Rig rig({Subtype::euclideanity}, 3, single);
    Cell a = rig.cell(0), b = rig.cell(1), c = rig.cell(2);
    // The new row pairs with itself as a leg, so (a,b) alone owes (b,b).
    Outcome o1 = rig.insert(0, 1);
    REQUIRE(o1.generated.size() == 1);
    CHECK(o1.generated[0].f == b);
    CHECK(o1.generated[0].g == b);
    Outcome o = rig.insert(0, 2);  // (a,c) against sibling (a,b)
    REQUIRE(o.generated.size() == 2);
    CHECK(o.generated[0].f == c);
    CHECK(o.generated[0].g == b);
    CHECK(o.generated[1].f == c);
    CHECK(o.generated[1].g == c);
    CHECK(rig.image() == PairSet{{a, b}, {b, b}, {a, c}, {c, b}, {c, c}});
  }
  SUBCASE("fixpoint completes the sibling square") {
    Rig rig({Subtype::euclideanity}, 3);
    Cell a = rig.cell(0), b = rig.cell(1), c = rig.cell(2);
    rig.insert(0, 1);
    rig.insert(0, 2);
    CHECK(rig.image() ==
          PairSet{{a, b}, {a, c}, {b, b}, {b, c}, {c, b}, {c, c}});
  }
}

TEST_CASE("a diagonal split under transitivity relinks the neighbourhood") {
  EngineConfig single{Propagation::single_pass, NullCyclePolicy::never_cycles};
  Rig rig({Subtype::transitivity}, 3, single);
  Cell a = rig.cell(0), b = rig.cell(1), c = rig.cell(2);
  RowId r1 = *rig.insert(0, 0).row;  // (a,a)
  rig.insert(0, 1);                  // (a,b)
  Outcome o = rig.update(r1, a, c);  // split the diagonal into (a,c)
  REQUIRE(o.generated.size() == 1);
  CHECK(o.generated[0].f == b);
  CHECK(o.generated[0].g == c);
  CHECK(rig.image() == PairSet{{a, b}, {a, c}, {b, c}});
}

TEST_CASE("reject-only handlers catch each role of the incoming pair") {
  SUBCASE("null identity") {
    Rig rig({Subtype::null_identity}, 2);
    CHECK(rig.insert(0, 0).accepted);
    CHECK(rig.insert(Cell{}, rig.cell(1)).accepted);
    CHECK(msg(rig.insert(0, 1)) == "Request rejected: f•g null-identical!");
  }
  SUBCASE("irreflexivity") {
    Rig rig({Subtype::irreflexivity}, 2);
    CHECK(rig.insert(0, 1).accepted);
    CHECK(rig.insert(rig.cell(0), Cell{}).accepted);
    CHECK(msg(rig.insert(0, 0)) == "Request rejected: f•g irreflexive!");
  }
  SUBCASE("asymmetry rejects the transpose and self-loops") {
    Rig rig({Subtype::asymmetry}, 2);
    RowId r1 = *rig.insert(0, 1).row;
    CHECK(msg(rig.insert(1, 0)) == "Request rejected: f•g asymmetric!");
    CHECK(msg(rig.insert(0, 0)) == "Request rejected: f•g asymmetric!");
    // The edited row's own pair does not block its inversion.
    CHECK(rig.update(r1, rig.cell(1), rig.cell(0)).accepted);
  }
  SUBCASE("intransitivity rejects composite, forward leg and backward leg") {
    Rig composite({Subtype::intransitivity}, 3);
    composite.insert(0, 1);
    composite.insert(1, 2);
    CHECK(msg(composite.insert(0, 2)) == "Request rejected: f•g intransitive!");

    Rig leg1({Subtype::intransitivity}, 3);
    leg1.insert(1, 2);
    leg1.insert(0, 2);
    CHECK(msg(leg1.insert(0, 1)) == "Request rejected: f•g intransitive!");

    Rig leg2({Subtype::intransitivity}, 3);
    leg2.insert(0, 1);
    leg2.insert(0, 2);
    CHECK(msg(leg2.insert(1, 2)) == "Request rejected: f•g intransitive!");

    Rig self({Subtype::intransitivity}, 1);
    CHECK(msg(self.insert(0, 0)) == "Request rejected: f•g intransitive!");
  }
  SUBCASE("ineuclideanity rejects composite, either leg role and self-loops") {
    Rig composite({Subtype::ineuclideanity}, 3);
    composite.insert(0, 1);
    composite.insert(0, 2);
    CHECK(msg(composite.insert(1, 2)) == "Request rejected: f•g inEuclidean!");

    Rig leg1({Subtype::ineuclideanity}, 3);
    leg1.insert(0, 2);
    leg1.insert(1, 2);
    CHECK(msg(leg1.insert(0, 1)) == "Request rejected: f•g inEuclidean!");

    Rig leg2({Subtype::ineuclideanity}, 3);
    leg2.insert(0, 2);
    leg2.insert(2, 1);
    CHECK(msg(leg2.insert(0, 1)) == "Request rejected: f•g inEuclidean!");

    Rig self({Subtype::ineuclideanity}, 1);
    CHECK(msg(self.insert(0, 0)) == "Request rejected: f•g inEuclidean!");
  }
  SUBCASE("acyclicity walks existing paths") {
    Rig rig({Subtype::acyclicity}, 3);
    rig.insert(0, 1);
    rig.insert(1, 2);
    CHECK(msg(rig.insert(2, 0)) == "Request rejected: f•g acyclic!");
    CHECK(msg(rig.insert(0, 0)) == "Request rejected: f•g acyclic!");
    CHECK(rig.insert(0, 2).accepted);
  }
  SUBCASE("null pairs follow the configured cycle policy") {
    Rig lenient({Subtype::acyclicity}, 1);
    CHECK(lenient.insert(Cell{}, lenient.cell(0)).accepted);

    EngineConfig literal{Propagation::fixpoint, NullCyclePolicy::always_cycles};
    Rig strict({Subtype::acyclicity}, 1, literal);
    CHECK(msg(strict.insert(Cell{}, strict.cell(0))) ==
          "Request rejected: f•g acyclic!");
  }
}

TEST_CASE("density guards saves and deletes exactly") {
  Rig rig({Subtype::density}, 3);
  RowId rbb = *rig.insert(1, 1).row;  // (b,b)
  RowId rab = *rig.insert(0, 1).row;  // (a,b), interpolated through b
  CHECK(rig.insert(1, 2).accepted);   // (b,c), interpolated through b
  RowId rac = *rig.insert(0, 2).row;  // (a,c), interpolated through b
  // (c,a) has no middle member: c reaches nobody who reaches a.
  CHECK(msg(rig.insert(2, 0)) == "Request rejected: f•g dense!");
  // Null-bearing inserts pass outright; null-bearing updates are checked.
  CHECK(rig.insert(rig.cell(2), Cell{}).accepted);
  CHECK(msg(rig.update(rbb, rig.cell(1), Cell{})) ==
        "Request rejected: f•g dense!");
  CHECK(msg(rig.erase(rbb)) == "Request rejected: f•g dense!");
  // Pairs nothing routes through may go, and once fewer than two concrete
  // pairs remain everything is droppable.
  CHECK(rig.erase(rac).accepted);
  CHECK(rig.erase(rab).accepted);
  CHECK(rig.erase(rbb).accepted);
}

TEST_CASE("reflexivity restricts updates of witness rows") {
  Rig rig({Subtype::reflexivity}, 2);
  Cell a = rig.cell(0), b = rig.cell(1);
  RowId r1 = *rig.insert(0, 0).row;  // (a,a)
  // A diagonal witness may only fade towards null forms.
  CHECK(msg(rig.update(r1, a, b)) == "Request rejected: f•g reflexive!");
  CHECK(msg(rig.update(r1, b, b)) == "Request rejected: f•g reflexive!");
  Outcome fade = rig.update(r1, a, Cell{});
  CHECK(fade.accepted);
  // The member stays active through (a,null), so the loop grows right back.
  REQUIRE(fade.generated.size() == 1);
  CHECK(fade.generated[0].f == a);
  CHECK(fade.generated[0].g == a);
  // A half-null witness may only re-solidify to its own diagonal.
  CHECK(msg(rig.update(r1, b, Cell{})) == "Request rejected: f•g reflexive!");
  CHECK(msg(rig.update(r1, Cell{}, b)) == "Request rejected: f•g reflexive!");
  CHECK(rig.update(r1, a, a).accepted);
}

TEST_CASE("reflexivity restricts deletes of witness rows") {
  Rig rig({Subtype::reflexivity}, 1);
  Cell a = rig.cell(0);
  RowId r1 = *rig.insert(0, 0).row;  // (a,a)
  // Deleting the only witness form is refused; a cover makes it legal,
  // and the chase then restores the loop the active member still owes.
  CHECK(msg(rig.erase(r1)) == "Request rejected: f•g reflexive!");
  RowId r2 = *rig.insert(a, Cell{}).row;
  Outcome del = rig.erase(r1);
  CHECK(del.accepted);
  REQUIRE(del.generated.size() == 1);
  CHECK(del.generated[0].f == a);
  CHECK(del.generated[0].g == a);
  // The regenerated loop now covers dropping the half-null form.
  Outcome del2 = rig.erase(r2);
  CHECK(del2.accepted);
  CHECK(del2.generated.empty());
  CHECK(rig.image() == PairSet{{a, a}});
}

TEST_CASE("a tolerant reflexive handler accepts a null witness after delete") {
  Rig rig({Subtype::null_reflexivity}, 0);
  rig.engine.apply(Mutation::addNode("a"));
  Cell a = Cell(*rig.store.find_node("a"));
  RowId r1 = rig.store.first_row_with_pair({a, a}).value();
  rig.engine.apply(Mutation::insertRow(a, Cell{}));
  Outcome del = rig.engine.apply(Mutation::deleteRow(r1));
  CHECK(del.accepted);
  CHECK(del.generated.empty());  // (a,null) satisfies the tolerant reading
  CHECK(rig.image() == PairSet{{a, Cell{}}});
}

TEST_CASE("connectivity delete needs a residual link unless covered") {
  Rig rig({Subtype::connectivity});
  rig.engine.apply(Mutation::addNode("a"));
  Outcome ob = rig.engine.apply(Mutation::addNode("b"));
  REQUIRE(ob.generated.size() == 1);
  RowId r1 = ob.generated[0].row;  // (b,a)
  Cell a = Cell(*rig.store.find_node("a")), b = Cell(*rig.store.find_node("b"));
  Outcome o2 = rig.engine.apply(Mutation::insertRow(a, b));
  RowId r2 = *o2.row;
  CHECK(rig.erase(r1).accepted);  // (a,b) still links the two
  Outcome refused = rig.erase(r2);
  CHECK(msg(refused) == "Request rejected: f•g connected!");
  // A null form covers the gap the figures allow.
  rig.engine.apply(Mutation::insertRow(b, Cell{}));
  Outcome covered = rig.erase(r2);
  CHECK(covered.accepted);
  // The fixpoint immediately re-links the members it still owes.
  REQUIRE(covered.generated.size() == 1);
  CHECK(rig.store.has_pair({a, b}));
}

TEST_CASE("transitivity and euclideanity freeze composite and diagonal rows") {
  Rig rig({Subtype::transitivity}, 3);
  rig.insert(0, 1);
  Outcome o = rig.insert(1, 2);
  RowId comp = o.generated[0].row;  // (a,c)
  CHECK(msg(rig.erase(comp)) == "Request rejected: f•g transitive!");
  CHECK(msg(rig.update(comp, rig.cell(0), Cell{})) ==
        "Request rejected: f•g transitive!");

  Store s2;
  NodeId a = s2.add_node("a"), b = s2.add_node("b");
  RowId d = s2.insert_row_raw(Cell(a), Cell(a));
  s2.insert_row_raw(Cell(a), Cell(b));
  Engine e2(s2, plan({Subtype::euclideanity}));
  CHECK(msg(e2.apply(Mutation::updateRow(d, Cell(a), Cell(b)))) ==
        "Request rejected: f•g Euclidean!");
  RowId bb = s2.insert_row_raw(Cell(b), Cell(b));
  CHECK(msg(e2.apply(Mutation::deleteRow(bb))) ==
        "Request rejected: f•g Euclidean!");
}

TEST_CASE("combined connectivity and symmetry freeze edits except fades") {
  Rig rig({Subtype::connectivity, Subtype::symmetry});
  rig.engine.apply(Mutation::addNode("a"));
  rig.engine.apply(Mutation::addNode("b"));
  Cell a = Cell(*rig.store.find_node("a")), b = Cell(*rig.store.find_node("b"));
  RowId r = rig.store.first_row_with_pair({b, a}).value();
  // The no-op gate wins before the combined restriction.
  CHECK(rig.update(r, b, a).accepted);
  CHECK(msg(rig.update(r, a, b)) ==
        "Request rejected: f•g connected and symmetric!");
  CHECK(msg(rig.update(r, Cell{}, Cell{})) ==
        "Request rejected: f•g connected and symmetric!");
  Outcome fade = rig.update(r, b, Cell{});
  CHECK(fade.accepted);
  // (a,b) still stands, so the symmetric chase regrows the mirror pair.
  REQUIRE(fade.generated.size() == 1);
  CHECK(rig.store.has_pair({b, a}));
  // Deletes of any member-naming row are refused outright.
  RowId r2 = rig.store.first_row_with_pair({a, b}).value();
  CHECK(msg(rig.erase(r2)) ==
        "Request rejected: f•g connected and symmetric!");
  Outcome nn = rig.engine.apply(Mutation::insertRow(Cell{}, Cell{}));
  CHECK(rig.erase(*nn.row).accepted);
}

TEST_CASE("rejected mutations leave no trace") {
  Rig rig({Subtype::acyclicity}, 3);
  rig.insert(0, 1);
  rig.insert(1, 2);
  std::string before = dump_state(rig.store, {Subtype::acyclicity});
  CHECK(!rig.insert(2, 0).accepted);
  CHECK(dump_state(rig.store, {Subtype::acyclicity}) == before);
}

TEST_CASE("writing back identical cells is accepted without any handler work") {
  Rig rig({Subtype::connectivity, Subtype::symmetry});
  rig.engine.apply(Mutation::addNode("a"));
  rig.engine.apply(Mutation::addNode("b"));
  Cell b = Cell(*rig.store.find_node("b"));
  Outcome half = rig.engine.apply(Mutation::insertRow(b, Cell{}));
  Outcome noop = rig.update(*half.row, b, Cell{});
  CHECK(noop.accepted);
  CHECK(noop.generated.empty());
}

TEST_CASE("the generated trace replays onto a clone to the same state") {
  std::vector<ConstraintSet> plans = {
      {Subtype::symmetry},
      {Subtype::transitivity},
      {Subtype::reflexivity, Subtype::symmetry},
      {Subtype::equivalence},
      {Subtype::connectivity, Subtype::symmetry},
      {Subtype::null_symmetry, Subtype::null_transitivity},
  };
  for (std::size_t pi = 0; pi < plans.size(); ++pi) {
    std::mt19937_64 rng(7700 + pi);
    Store store;
    Engine engine(store, plan(plans[pi]));
    Store shadow;  // replays primary + generated raw operations
    auto observer = [&](const Mutation& m, const Outcome& o) {
      if (!o.accepted) return;
      switch (m.kind) {
        case Mutation::Kind::add_node:
          shadow.add_node(m.label);
          break;
        case Mutation::Kind::insert_row:
          CHECK(shadow.insert_row_raw(m.f, m.g) == *o.row);
          break;
        case Mutation::Kind::update_row:
          shadow.update_row_raw(m.row, m.f, m.g);
          break;
        case Mutation::Kind::delete_row:
          shadow.delete_row_raw(m.row);
          break;
      }
      for (const auto& c : o.generated) {
        switch (c.kind) {
          case RowChange::Kind::added:
            // Every generated row was absent at its turn.
            CHECK(!shadow.has_pair({c.f, c.g}));
            CHECK(shadow.insert_row_raw(c.f, c.g) == c.row);
            break;
          case RowChange::Kind::removed:
            shadow.delete_row_raw(c.row);
            break;
          case RowChange::Kind::replaced:
            shadow.update_row_raw(c.row, c.f, c.g);
            break;
        }
      }
    };
    testsupport::random_session(engine, rng, 160, 5, observer);
    CHECK(dump_state(shadow, plans[pi]) == dump_state(store, plans[pi]));
  }
}
