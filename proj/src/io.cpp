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

// Script parsing and execution, and the byte-stable state dump format.

#include "dyad/io.hpp"

#include <set>
#include <sstream>

#include "dyad/cycle.hpp"
#include "dyad/oracle.hpp"

namespace dyad {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::string body = line;
  if (auto hash = body.find('#'); hash != std::string::npos) body.resize(hash);
  std::istringstream in(body);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

RowId parse_row_id(std::size_t line_no, const std::string& tok) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(tok, &used);
  } catch (const std::exception&) {
    throw ParseError(line_no, "expected a row id, got '" + tok + "'");
  }
  if (used != tok.size())
    throw ParseError(line_no, "expected a row id, got '" + tok + "'");
  return RowId(value);
}

void require_args(std::size_t line_no, const std::vector<std::string>& tokens,
                  std::size_t count, const std::string& usage) {
  if (tokens.size() != count + 1)
    throw ParseError(line_no, "expected '" + usage + "'");
}

}  // namespace

std::vector<Command> parse_script(const std::string& text) {
  std::vector<Command> commands;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    Command cmd;
    cmd.line = line_no;
    const std::string& word = tokens[0];
    if (word == "constraint") {
      require_args(line_no, tokens, 1, "constraint <subtype>");
      auto s = subtype_from_string(tokens[1]);
      if (!s)
        throw UnknownSubtype(line_no,
                             "unknown constraint subtype: '" + tokens[1] + "'");
      cmd.kind = Command::Kind::constraint;
      cmd.subtype = *s;
    } else if (word == "node") {
      require_args(line_no, tokens, 1, "node <label>");
      cmd.kind = Command::Kind::node;
      cmd.label = tokens[1];
    } else if (word == "insert") {
      require_args(line_no, tokens, 2, "insert <f> <g>");
      cmd.kind = Command::Kind::insert;
      cmd.f = tokens[1];
      cmd.g = tokens[2];
    } else if (word == "update") {
      require_args(line_no, tokens, 3, "update <row> <f> <g>");
      cmd.kind = Command::Kind::update;
      cmd.row = parse_row_id(line_no, tokens[1]);
      cmd.f = tokens[2];
      cmd.g = tokens[3];
    } else if (word == "delete") {
      require_args(line_no, tokens, 1, "delete <row>");
      cmd.kind = Command::Kind::erase;
      cmd.row = parse_row_id(line_no, tokens[1]);
    } else if (word == "plan" || word == "check" || word == "closure" ||
               word == "dump") {
      require_args(line_no, tokens, 0, word);
      cmd.kind = word == "plan"      ? Command::Kind::plan
                 : word == "check"   ? Command::Kind::check
                 : word == "closure" ? Command::Kind::closure
                                     : Command::Kind::dump;
    } else {
      throw ParseError(line_no, "unknown command: '" + word + "'");
    }
    commands.push_back(cmd);
  }
  return commands;
}

namespace {

std::string change_text(const Store& store, const RowChange& c) {
  char mark = c.kind == RowChange::Kind::added     ? '+'
              : c.kind == RowChange::Kind::removed ? '-'
                                                   : '~';
  return mark + std::to_string(c.row) + "=(" + cell_text(store, c.f) + "," +
         cell_text(store, c.g) + ")";
}

std::string generated_text(const Store& store,
                           const std::vector<RowChange>& generated) {
  std::string out = "generated=[";
  for (std::size_t i = 0; i < generated.size(); ++i) {
    if (i) out += ",";
    out += change_text(store, generated[i]);
  }
  return out + "]";
}

}  // namespace

std::string cell_text(const Store& store, const Cell& c) {
  return c ? store.label(*c) : "null";
}

RunResult execute(const std::string& script, Store& store,
                  const EngineConfig& config) {
  RunResult result;
  std::ostringstream out;
  std::vector<Command> commands;
  try {
    commands = parse_script(script);
  } catch (const ParseError& e) {
    result.exit_code = 2;
    result.diagnostic = "error: " + std::string(e.what());
    return result;
  }

  std::optional<Engine> engine;  // constructed when the plan freezes
  bool any_rejection = false;

  auto freeze = [&](std::size_t line_no) -> bool {
    if (engine) return true;
    EnforcementPlan p = plan(result.declared);
    if (p.has_conflicts()) {
      std::string reasons;
      std::set<std::string> seen;
      for (const auto& e : p.entries) {
        if (e.decision != Decision::conflict) continue;
        if (!seen.insert(e.reason).second) continue;
        if (!reasons.empty()) reasons += "; ";
        reasons += e.reason;
      }
      result.diagnostic = "error: line " + std::to_string(line_no) +
                          ": conflicting constraints: " + reasons;
      return false;
    }
    engine.emplace(store, std::move(p), config);
    return true;
  };

  auto resolve = [&](std::size_t line_no, const std::string& tok) -> Cell {
    if (tok == "null") return std::nullopt;
    auto id = store.find_node(tok);
    if (!id)
      throw ParseError(line_no, "unknown node label: '" + tok + "'");
    return Cell(*id);
  };

  for (const Command& cmd : commands) {
    try {
      switch (cmd.kind) {
        case Command::Kind::constraint: {
          if (engine) {
            result.exit_code = 2;
            result.diagnostic = "error: line " + std::to_string(cmd.line) +
                                ": constraint declared after the first mutation";
            result.transcript = out.str();
            return result;
          }
          result.declared.insert(cmd.subtype);
          break;
        }
        case Command::Kind::node: {
          if (!freeze(cmd.line)) {
            result.exit_code = 2;
            result.transcript = out.str();
            return result;
          }
          Outcome o = engine->apply(Mutation::addNode(cmd.label));
          out << "ok node=" << cmd.label << " "
              << generated_text(store, o.generated) << "\n";
          break;
        }
        case Command::Kind::insert:
        case Command::Kind::update:
        case Command::Kind::erase: {
          if (!freeze(cmd.line)) {
            result.exit_code = 2;
            result.transcript = out.str();
            return result;
          }
          Mutation m = Mutation::deleteRow(cmd.row);
          if (cmd.kind != Command::Kind::erase) {
            // Resolve f before g so a diagnostic names the first bad label.
            Cell f = resolve(cmd.line, cmd.f);
            Cell g = resolve(cmd.line, cmd.g);
            m = cmd.kind == Command::Kind::insert
                    ? Mutation::insertRow(f, g)
                    : Mutation::updateRow(cmd.row, f, g);
          }
          Outcome o = engine->apply(m);
          if (o.accepted) {
            out << "ok row=" << *o.row << " "
                << generated_text(store, o.generated) << "\n";
          } else {
            out << o.rejection->message << "\n";
            any_rejection = true;
          }
          break;
        }
        case Command::Kind::plan: {
          out << plan(result.declared).render();
          break;
        }
        case Command::Kind::check: {
          for (const Verdict& v : holds_all(store, result.declared))
            out << v.render() << "\n";
          break;
        }
        case Command::Kind::closure: {
          std::set<std::pair<std::string, std::string>> pairs;
          for (const auto& [a, b] : transitive_closure(store))
            pairs.insert({store.label(*a), store.label(*b)});
          for (const auto& [a, b] : pairs) out << "(" << a << "," << b << ")\n";
          break;
        }
        case Command::Kind::dump: {
          out << dump_state(store, result.declared);
          break;
        }
      }
    } catch (const ParseError& e) {
      result.exit_code = 2;
      result.diagnostic = "error: " + std::string(e.what());
      result.transcript = out.str();
      return result;
    } catch (const StoreError& e) {
      result.exit_code = 2;
      result.diagnostic = "error: line " + std::to_string(cmd.line) + ": " +
                          e.what();
      result.transcript = out.str();
      return result;
    }
  }

  result.exit_code = any_rejection ? 1 : 0;
  result.transcript = out.str();
  return result;
}

std::string dump_state(const Store& store, const ConstraintSet& declared) {
  std::ostringstream out;
  out << "dyad-dump 1\n";
  out << "next-node " << store.next_node_id() << "\n";
  out << "next-row " << store.next_row_id() << "\n";
  out << "constraints " << declared.size() << "\n";
  for (Subtype s : declared) out << to_string(s) << "\n";
  out << "nodes " << store.nodes().size() << "\n";
  for (const auto& [label, id] : store.labels()) out << id << " " << label << "\n";
  out << "rows " << store.rows().size() << "\n";
  for (const auto& [id, row] : store.rows())
    out << id << " " << cell_text(store, row.f) << " " << cell_text(store, row.g)
        << "\n";
  return out.str();
}

namespace {

// Dumps carry no comments, so split on whitespace only: labels may
// legitimately contain characters the script language would discard.
std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

std::vector<std::string> dump_tokens(std::istringstream& in, const std::string& what,
                                     std::size_t count) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("truncated dump: missing " + what);
  auto tokens = split_ws(line);
  if (tokens.size() != count)
    throw FormatError("malformed dump line for " + what + ": '" + line + "'");
  return tokens;
}

std::uint64_t parse_count(const std::string& what, const std::string& tok) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(tok, &used);
  } catch (const std::exception&) {
    throw FormatError("bad number for " + what + ": '" + tok + "'");
  }
  if (used != tok.size())
    throw FormatError("bad number for " + what + ": '" + tok + "'");
  return value;
}

}  // namespace

std::pair<Store, ConstraintSet> load_state(const std::string& text) {
  std::istringstream in(text);

  auto header = dump_tokens(in, "header", 2);
  if (header[0] != "dyad-dump" || header[1] != "1")
    throw FormatError("not a dyad dump (bad header)");

  auto next_node_line = dump_tokens(in, "next-node", 2);
  if (next_node_line[0] != "next-node") throw FormatError("expected next-node");
  auto next_node = NodeId(parse_count("next-node", next_node_line[1]));

  auto next_row_line = dump_tokens(in, "next-row", 2);
  if (next_row_line[0] != "next-row") throw FormatError("expected next-row");
  auto next_row = RowId(parse_count("next-row", next_row_line[1]));

  auto constraints_line = dump_tokens(in, "constraints", 2);
  if (constraints_line[0] != "constraints") throw FormatError("expected constraints");
  auto constraint_count = parse_count("constraints", constraints_line[1]);
  ConstraintSet declared;
  for (std::uint64_t i = 0; i < constraint_count; ++i) {
    auto tokens = dump_tokens(in, "constraint name", 1);
    auto s = subtype_from_string(tokens[0]);
    if (!s) throw FormatError("unknown constraint subtype: '" + tokens[0] + "'");
    if (!declared.insert(*s).second)
      throw FormatError("duplicate constraint subtype: '" + tokens[0] + "'");
  }

  auto nodes_line = dump_tokens(in, "nodes", 2);
  if (nodes_line[0] != "nodes") throw FormatError("expected nodes");
  auto node_count = parse_count("nodes", nodes_line[1]);
  std::vector<Node> nodes;
  std::map<std::string, NodeId> by_label;
  for (std::uint64_t i = 0; i < node_count; ++i) {
    auto tokens = dump_tokens(in, "node", 2);
    Node n;
    n.id = NodeId(parse_count("node id", tokens[0]));
    n.label = tokens[1];
    if (!by_label.emplace(n.label, n.id).second)
      throw FormatError("duplicate node label: '" + n.label + "'");
    nodes.push_back(n);
  }

  auto rows_line = dump_tokens(in, "rows", 2);
  if (rows_line[0] != "rows") throw FormatError("expected rows");
  auto row_count = parse_count("rows", rows_line[1]);
  std::vector<Row> rows;
  auto resolve = [&](const std::string& tok) -> Cell {
    if (tok == "null") return std::nullopt;
    auto it = by_label.find(tok);
    if (it == by_label.end())
      throw FormatError("row references unknown node label: '" + tok + "'");
    return Cell(it->second);
  };
  for (std::uint64_t i = 0; i < row_count; ++i) {
    auto tokens = dump_tokens(in, "row", 3);
    Row r;
    r.id = RowId(parse_count("row id", tokens[0]));
    r.f = resolve(tokens[1]);
    r.g = resolve(tokens[2]);
    rows.push_back(r);
  }

  std::string line;
  while (std::getline(in, line)) {
    if (!split_ws(line).empty())
      throw FormatError("trailing content after rows: '" + line + "'");
  }

  try {
    Store store = Store::restore(std::move(nodes), std::move(rows), next_node,
                                 next_row);
    return {std::move(store), std::move(declared)};
  } catch (const StoreError& e) {
    throw FormatError(e.what());
  }
}

}  // namespace dyad
