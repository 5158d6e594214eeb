#
#   Copyright 2026 The dyad authors
#
#   Licensed under the Apache License, Version 2.0 (the "License");
#   you may not use this file except in compliance with the License.
#   You may obtain a copy of the License at
#
#       http://www.apache.org/licenses/LICENSE-2.0
#
#   Unless required by applicable law or agreed to in writing, software
#   distributed under the License is distributed on an "AS IS" BASIS,
#   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#   See the License for the specific language governing permissions and
#   limitations under the License.
#

"""Smoke tests for the Python bindings: one pass over every bound surface."""

import pytest

import dyad

BULLET = "•"


def test_module_surface():
    names = dyad.subtypes()
    assert len(names) == 18
    assert names[0] == "connectivity"
    assert names[-1] == "density"


def test_plan_decisions_and_render():
    p = dyad.plan(["irreflexivity", "asymmetry", "ineuclideanity", "acyclicity"])
    decisions = {name: decision for name, decision, _ in p.entries()}
    assert decisions == {
        "irreflexivity": "redundant",
        "asymmetry": "redundant",
        "ineuclideanity": "enforce",
        "acyclicity": "enforce",
    }
    assert not p.has_conflicts()
    assert "acyclicity: enforce" in p.render()


def test_conflicts_detected():
    found = dyad.conflicts(["reflexivity", "irreflexivity"])
    assert found == [
        ("reflexivity", "irreflexivity", "reflexive excludes irreflexive")
    ]
    assert dyad.plan(["reflexivity", "irreflexivity"]).has_conflicts()


def test_engine_generates_symmetric_counterpart():
    store = dyad.Store()
    engine = dyad.Engine(store, ["symmetry"])
    engine.add_node("ann")
    engine.add_node("bob")
    outcome = engine.insert("ann", "bob")
    assert outcome["accepted"]
    assert outcome["generated"] == [("+", outcome["row"] + 1, "bob", "ann")]
    assert store.image() == {("ann", "bob"), ("bob", "ann")}


def test_engine_update_and_delete_maintain_symmetry():
    store = dyad.Store()
    engine = dyad.Engine(store, ["symmetry"])
    for label in ("a", "b", "c"):
        engine.add_node(label)
    row = engine.insert("a", "b")["row"]
    outcome = engine.update(row, "a", "c")
    assert outcome["accepted"]
    assert store.image() == {("a", "c"), ("c", "a")}
    outcome = engine.delete(row)
    assert outcome["accepted"]
    assert store.image() == set()


def test_engine_rejects_with_exact_message():
    store = dyad.Store()
    engine = dyad.Engine(store, ["acyclicity"])
    engine.add_node("ann")
    outcome = engine.insert("ann", "ann")
    assert not outcome["accepted"]
    assert outcome["message"] == f"Request rejected: f{BULLET}g acyclic!"
    assert store.rows() == {}


def test_conflicted_plan_refuses_mutations():
    store = dyad.Store()
    engine = dyad.Engine(store, ["reflexivity", "irreflexivity"])
    with pytest.raises(RuntimeError):
        engine.add_node("ann")


def test_oracle_and_cycle_probe():
    store = dyad.Store()
    for label in ("a", "b", "c"):
        store.add_node(label)
    store.insert_row("a", "b")
    store.insert_row("b", "c")
    held, witness = dyad.holds(store, "transitivity")
    assert not held and witness == "(a,b,c)"
    store.insert_row("a", "c")
    held, witness = dyad.holds(store, "transitivity")
    assert held and witness == ""
    assert dyad.transitive_closure(store) == {("a", "b"), ("b", "c"), ("a", "c")}
    assert dyad.is_cycle(store, "c", "a")
    assert not dyad.is_cycle(store, "a", "b")
    assert not dyad.is_cycle(store, None, "a")
    assert dyad.is_cycle(store, None, "a", null_cycles_literal=True)


def test_run_script_and_dump_round_trip():
    script = "\n".join(
        [
            "constraint symmetry",
            "node ann",
            "node bob",
            "plan",
            "insert ann bob",
            "check",
            "dump",
            "",
        ]
    )
    first = dyad.run_script(script)
    second = dyad.run_script(script)
    assert first == second
    code, transcript, diagnostic = first
    assert code == 0 and diagnostic == ""
    assert "symmetry: enforce" in transcript
    assert "ok row=1 generated=[+2=(bob,ann)]" in transcript
    assert "symmetry: OK" in transcript

    store = dyad.Store()
    for label in ("ann", "bob"):
        store.add_node(label)
    store.insert_row("ann", "bob")
    store.insert_row("bob", "ann")
    dump = dyad.dump_state(store, ["symmetry"])
    assert dump.startswith("dyad-dump 1\n")
    restored, declared = dyad.load_state(dump)
    assert declared == ["symmetry"]
    assert dyad.dump_state(restored, declared) == dump
    assert restored.image() == store.image()


def test_single_pass_skips_the_closing_chase():
    script = (
        "constraint transitivity\n"
        "node a\nnode b\nnode c\n"
        "plan\n"
        "insert a b\n"
        "insert b c\n"
        "check\n"
    )
    code, transcript, _ = dyad.run_script(script, single_pass=True)
    assert code == 0
    assert "ok row=2 generated=[]" in transcript
    assert "transitivity: FAIL witness=(a,b,c)" in transcript
    code, transcript, _ = dyad.run_script(script)
    assert code == 0
    assert "transitivity: OK" in transcript


def test_store_errors_surface_as_exceptions():
    store = dyad.Store()
    with pytest.raises(dyad.StoreError):
        store.insert_row("ghost", None)
    store.add_node("ann")
    with pytest.raises(dyad.StoreError):
        store.add_node("ann")
    with pytest.raises(dyad.FormatError):
        dyad.load_state("not a dump")
