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

// Script and dump formats: parsing of the line-oriented mutation script
// language, script execution against a fresh engine, and a byte-stable
// text dump for persisting and reloading store + constraint state.

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dyad/constraints.hpp"
#include "dyad/engine.hpp"
#include "dyad/store.hpp"

namespace dyad {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
        line(line_no),
        detail(msg) {}
  std::size_t line = 0;
  std::string detail;
};

struct UnknownSubtype : ParseError {
  using ParseError::ParseError;
};

// A dump that fails structural validation on load.
struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Command {
  enum class Kind {
    constraint,  // constraint <subtype>
    node,        // node <label>
    insert,      // insert <f> <g>      (label or null)
    update,      // update <row> <f> <g>
    erase,       // delete <row>
    plan,        // print the enforcement plan
    check,       // print definitional verdicts for the declared set
    closure,     // print the reachability pairs of the image
    dump,        // print the dump text inline
  };

  Kind kind = Kind::plan;
  std::size_t line = 0;
  Subtype subtype = Subtype::connectivity;  // constraint
  std::string label;                        // node
  std::string f, g;                         // insert/update cell tokens
  RowId row = 0;                            // update/delete
};

std::vector<Command> parse_script(const std::string& text);

struct RunResult {
  // 0: completed, no rejections; 1: completed with rejections;
  // 2: stopped on a script or plumbing error (diagnostic set).
  int exit_code = 0;
  std::string transcript;
  ConstraintSet declared;
  std::string diagnostic;
};

RunResult execute(const std::string& script, Store& store,
                  const EngineConfig& config = {});

// Byte-stable textual state: constraints, nodes, rows and id counters.
std::string dump_state(const Store& store, const ConstraintSet& declared);
std::pair<Store, ConstraintSet> load_state(const std::string& text);

// Cell rendering used by transcripts and dumps: label text or "null".
std::string cell_text(const Store& store, const Cell& c);

}  // namespace dyad
