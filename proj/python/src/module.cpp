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

// Python bindings. The Python surface is label-oriented: node cells are
// passed and returned as label strings, None standing in for null.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dyad/cycle.hpp"
#include "dyad/engine.hpp"
#include "dyad/io.hpp"
#include "dyad/oracle.hpp"
#include "dyad/store.hpp"

namespace py = pybind11;

namespace {

using MaybeLabel = std::optional<std::string>;

dyad::Subtype to_subtype(const py::handle& value) {
  if (py::isinstance<dyad::Subtype>(value)) return value.cast<dyad::Subtype>();
  auto name = value.cast<std::string>();
  auto s = dyad::subtype_from_string(name);
  if (!s) throw py::value_error("unknown constraint subtype: '" + name + "'");
  return *s;
}

dyad::ConstraintSet to_constraint_set(const py::iterable& values) {
  dyad::ConstraintSet out;
  for (const py::handle& v : values) out.insert(to_subtype(v));
  return out;
}

dyad::Cell to_cell(const dyad::Store& store, const MaybeLabel& label) {
  if (!label) return std::nullopt;
  auto id = store.find_node(*label);
  if (!id) throw dyad::UnknownNode("unknown node label: '" + *label + "'");
  return dyad::Cell(*id);
}

MaybeLabel from_cell(const dyad::Store& store, const dyad::Cell& c) {
  if (!c) return std::nullopt;
  return store.label(*c);
}

// Store plus its engine-facing lifetime: Python owns the store value.
struct PyStore {
  dyad::Store store;
};

struct PyEngine {
  std::shared_ptr<PyStore> holder;
  std::unique_ptr<dyad::Engine> engine;
};

py::dict outcome_to_py(const dyad::Store& store, const dyad::Outcome& o) {
  py::dict d;
  d["accepted"] = o.accepted;
  d["row"] = o.row ? py::cast(*o.row) : py::none();
  d["node"] = o.node ? py::cast(store.label(*o.node)) : py::none();
  py::list generated;
  for (const auto& c : o.generated) {
    const char* mark = c.kind == dyad::RowChange::Kind::added     ? "+"
                       : c.kind == dyad::RowChange::Kind::removed ? "-"
                                                                  : "~";
    generated.append(py::make_tuple(mark, c.row, from_cell(store, c.f),
                                    from_cell(store, c.g)));
  }
  d["generated"] = generated;
  d["message"] = o.rejection ? py::cast(o.rejection->message) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-column relation store with declarative dyadic-constraint "
            "enforcement";

  py::register_exception<dyad::StoreError>(m, "StoreError");
  py::register_exception<dyad::FormatError>(m, "FormatError");

  py::enum_<dyad::Subtype> subtype(m, "Subtype");
  for (dyad::Subtype s : dyad::all_subtypes())
    subtype.value(dyad::to_string(s).c_str(), s);

  m.def("subtypes", [] {
    std::vector<std::string> names;
    for (dyad::Subtype s : dyad::all_subtypes()) names.push_back(dyad::to_string(s));
    return names;
  });

  py::class_<PyStore, std::shared_ptr<PyStore>>(m, "Store")
      .def(py::init<>())
      .def("add_node",
           [](PyStore& s, const std::string& label) {
             return s.store.add_node(label);
           })
      .def("remove_node",
           [](PyStore& s, const std::string& label) {
             auto id = s.store.find_node(label);
             if (!id)
               throw dyad::UnknownNode("unknown node label: '" + label + "'");
             s.store.remove_node(*id);
           })
      .def("insert_row",
           [](PyStore& s, const MaybeLabel& f, const MaybeLabel& g) {
             return s.store.insert_row_raw(to_cell(s.store, f), to_cell(s.store, g));
           })
      .def("update_row",
           [](PyStore& s, dyad::RowId id, const MaybeLabel& f, const MaybeLabel& g) {
             s.store.update_row_raw(id, to_cell(s.store, f), to_cell(s.store, g));
           })
      .def("delete_row",
           [](PyStore& s, dyad::RowId id) { s.store.delete_row_raw(id); })
      .def("nodes",
           [](const PyStore& s) {
             std::vector<std::string> labels;
             for (const auto& [label, id] : s.store.labels()) labels.push_back(label);
             return labels;
           })
      .def("rows",
           [](const PyStore& s) {
             py::dict rows;
             for (const auto& [id, row] : s.store.rows())
               rows[py::cast(id)] = py::make_tuple(from_cell(s.store, row.f),
                                                   from_cell(s.store, row.g));
             return rows;
           })
      .def("image",
           [](const PyStore& s) {
             py::set image;
             for (const auto& [p, carriers] : s.store.image())
               image.add(py::make_tuple(from_cell(s.store, p.first),
                                        from_cell(s.store, p.second)));
             return image;
           })
      .def("clone", [](const PyStore& s) {
        auto copy = std::make_shared<PyStore>();
        copy->store = s.store;
        return copy;
      });

  py::class_<dyad::EnforcementPlan>(m, "Plan")
      .def("entries",
           [](const dyad::EnforcementPlan& p) {
             py::list entries;
             for (const auto& e : p.entries) {
               const char* decision =
                   e.decision == dyad::Decision::enforce          ? "enforce"
                   : e.decision == dyad::Decision::skip_redundant ? "redundant"
                                                                  : "conflict";
               entries.append(py::make_tuple(dyad::to_string(e.subtype), decision,
                                             e.reason));
             }
             return entries;
           })
      .def("render", &dyad::EnforcementPlan::render)
      .def("has_conflicts", &dyad::EnforcementPlan::has_conflicts);

  m.def("plan",
        [](const py::iterable& subtypes) { return dyad::plan(to_constraint_set(subtypes)); });

  m.def("conflicts", [](const py::iterable& subtypes) {
    py::list out;
    for (const auto& c : dyad::conflicts(to_constraint_set(subtypes)))
      out.append(py::make_tuple(dyad::to_string(c.first), dyad::to_string(c.second),
                                c.reason));
    return out;
  });

  m.def("guard_table", [] {
    py::list out;
    for (const auto& spec : dyad::guard_table())
      out.append(py::make_tuple(dyad::to_string(spec.subject), spec.skip.render()));
    return out;
  });

  py::class_<PyEngine>(m, "Engine")
      .def(py::init([](std::shared_ptr<PyStore> store, const py::iterable& subtypes,
                       bool single_pass, bool null_cycles_literal) {
             auto p = dyad::plan(to_constraint_set(subtypes));
             dyad::EngineConfig config;
             if (single_pass) config.propagation = dyad::Propagation::single_pass;
             if (null_cycles_literal)
               config.null_cycles = dyad::NullCyclePolicy::always_cycles;
             auto e = std::make_unique<PyEngine>();
             e->holder = std::move(store);
             e->engine = std::make_unique<dyad::Engine>(e->holder->store,
                                                        std::move(p), config);
             return e;
           }),
           py::arg("store"), py::arg("subtypes"), py::arg("single_pass") = false,
           py::arg("null_cycles_literal") = false)
      .def("plan", [](const PyEngine& e) { return e.engine->plan(); })
      .def("add_node",
           [](PyEngine& e, const std::string& label) {
             return outcome_to_py(e.holder->store,
                                  e.engine->apply(dyad::Mutation::addNode(label)));
           })
      .def("insert",
           [](PyEngine& e, const MaybeLabel& f, const MaybeLabel& g) {
             const auto& s = e.holder->store;
             return outcome_to_py(
                 s, e.engine->apply(dyad::Mutation::insertRow(to_cell(s, f),
                                                              to_cell(s, g))));
           })
      .def("update",
           [](PyEngine& e, dyad::RowId id, const MaybeLabel& f, const MaybeLabel& g) {
             const auto& s = e.holder->store;
             return outcome_to_py(
                 s, e.engine->apply(dyad::Mutation::updateRow(id, to_cell(s, f),
                                                              to_cell(s, g))));
           })
      .def("delete",
           [](PyEngine& e, dyad::RowId id) {
             return outcome_to_py(e.holder->store,
                                  e.engine->apply(dyad::Mutation::deleteRow(id)));
           });

  m.def("holds", [](const PyStore& s, const py::handle& subtype) {
    dyad::Verdict v = dyad::holds(s.store, to_subtype(subtype));
    return py::make_tuple(v.holds, v.witness);
  });

  m.def("holds_all", [](const PyStore& s, const py::iterable& subtypes) {
    py::list out;
    for (const auto& v : dyad::holds_all(s.store, to_constraint_set(subtypes)))
      out.append(py::make_tuple(dyad::to_string(v.subtype), v.holds, v.witness));
    return out;
  });

  m.def(
      "is_cycle",
      [](const PyStore& s, const MaybeLabel& f, const MaybeLabel& g,
         std::optional<dyad::RowId> excluded_row, bool null_cycles_literal) {
        return dyad::is_cycle(s.store, excluded_row, to_cell(s.store, f),
                              to_cell(s.store, g),
                              null_cycles_literal
                                  ? dyad::NullCyclePolicy::always_cycles
                                  : dyad::NullCyclePolicy::never_cycles);
      },
      py::arg("store"), py::arg("f"), py::arg("g"),
      py::arg("excluded_row") = py::none(),
      py::arg("null_cycles_literal") = false);

  m.def("transitive_closure", [](const PyStore& s) {
    py::set out;
    for (const auto& [a, b] : dyad::transitive_closure(s.store))
      out.add(py::make_tuple(s.store.label(*a), s.store.label(*b)));
    return out;
  });

  m.def(
      "run_script",
      [](const std::string& text, bool single_pass, bool null_cycles_literal) {
        dyad::EngineConfig config;
        if (single_pass) config.propagation = dyad::Propagation::single_pass;
        if (null_cycles_literal)
          config.null_cycles = dyad::NullCyclePolicy::always_cycles;
        dyad::Store store;
        dyad::RunResult r = dyad::execute(text, store, config);
        return py::make_tuple(r.exit_code, r.transcript, r.diagnostic);
      },
      py::arg("text"), py::arg("single_pass") = false,
      py::arg("null_cycles_literal") = false);

  m.def("dump_state", [](const PyStore& s, const py::iterable& subtypes) {
    return dyad::dump_state(s.store, to_constraint_set(subtypes));
  });

  m.def("load_state", [](const std::string& text) {
    auto [store, declared] = dyad::load_state(text);
    auto holder = std::make_shared<PyStore>();
    holder->store = std::move(store);
    std::vector<std::string> names;
    for (dyad::Subtype s : declared) names.push_back(dyad::to_string(s));
    return py::make_tuple(holder, names);
  });
}
