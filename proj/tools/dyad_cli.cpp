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

// Command line front end: `dyad run` executes a mutation script under
// the declared constraints, `dyad check` re-validates a state dump
// against the constraint definitions.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyad/io.hpp"
#include "dyad/oracle.hpp"

namespace {

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  out = buf.str();
  return true;
}

int run_command(const std::string& script_path, const std::string& dump_path,
                bool single_pass, bool null_cycles_literal) {
  std::string script;
  if (!read_file(script_path, script)) {
    std::cerr << "error: cannot read script file '" << script_path << "'\n";
    return 2;
  }
  dyad::EngineConfig config;
  if (single_pass) config.propagation = dyad::Propagation::single_pass;
  if (null_cycles_literal)
    config.null_cycles = dyad::NullCyclePolicy::always_cycles;

  dyad::Store store;
  dyad::RunResult result = dyad::execute(script, store, config);
  std::cout << result.transcript;
  if (result.exit_code == 2) {
    std::cerr << result.diagnostic << "\n";
    return 2;
  }
  if (!dump_path.empty()) {
    std::ofstream out(dump_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write dump file '" << dump_path << "'\n";
      return 2;
    }
    out << dyad::dump_state(store, result.declared);
  }
  return result.exit_code;
}

int check_command(const std::string& dump_path,
                  const std::vector<std::string>& subtype_names) {
  std::string text;
  if (!read_file(dump_path, text)) {
    std::cerr << "error: cannot read dump file '" << dump_path << "'\n";
    return 2;
  }
  dyad::Store store;
  dyad::ConstraintSet declared;
  try {
    auto loaded = dyad::load_state(text);
    store = std::move(loaded.first);
    declared = std::move(loaded.second);
  } catch (const dyad::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  dyad::ConstraintSet chosen;
  if (subtype_names.empty()) {
    chosen = declared;
  } else {
    for (const auto& name : subtype_names) {
      auto s = dyad::subtype_from_string(name);
      if (!s) {
        std::cerr << "error: unknown constraint subtype: '" << name << "'\n";
        return 2;
      }
      chosen.insert(*s);
    }
  }

  bool all_ok = true;
  for (const dyad::Verdict& v : dyad::holds_all(store, chosen)) {
    std::cout << v.render() << "\n";
    if (!v.holds) all_ok = false;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-column relation store with declarative dyadic-constraint "
               "enforcement"};
  app.require_subcommand(1);

  std::string script_path;
  std::string dump_path;
  bool single_pass = false;
  bool null_cycles_literal = false;
  CLI::App* run = app.add_subcommand(
      "run", "Execute a mutation script under its declared constraints");
  run->add_option("script", script_path, "Script file to execute")->required();
  run->add_option("--dump", dump_path, "Write the final state to this file");
  run->add_flag("--single-pass", single_pass,
                "One generation pass per mutation instead of running to a "
                "fixpoint");
  run->add_flag("--null-cycles-literal", null_cycles_literal,
                "Treat null-bearing pairs as closing a cycle");

  std::string check_dump_path;
  std::vector<std::string> subtype_names;
  CLI::App* check = app.add_subcommand(
      "check", "Re-validate a state dump against constraint definitions");
  check->add_option("dump", check_dump_path, "State dump file to validate")
      ->required();
  check->add_option("subtypes", subtype_names,
                    "Subtypes to check (default: the dump's declared set)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return run_command(script_path, dump_path, single_pass, null_cycles_literal);
  return check_command(check_dump_path, subtype_names);
}
