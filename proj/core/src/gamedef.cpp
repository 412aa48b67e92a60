// Copyright 2026 The qeg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qeg/gamedef.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "qeg/errors.hpp"
#include "qeg/state.hpp"

namespace qeg {
namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string pointer_escape(const std::string& segment) {
  std::string out;
  for (char c : segment) {
    if (c == '~')
      out += "~0";
    else if (c == '/')
      out += "~1";
    else
      out += c;
  }
  return out;
}

std::string child_path(const std::string& path, const std::string& segment) {
  return path + "/" + pointer_escape(segment);
}

std::string element_path(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

// Walks already-validated JSON text once more, recording the position of
// every object key and array element under its pointer-style path. This
// pass only needs token boundaries, not values, which the JSON library has
// already produced.
class SpanScanner {
 public:
  SpanScanner(const std::string& text, std::map<std::string, SourcePos>& out)
      : text_(text), out_(out) {}

  void run() {
    skip_ws();
    record("");
    value("");
  }

 private:
  char peek() const { return i_ < text_.size() ? text_[i_] : '\0'; }
  bool done() const { return i_ >= text_.size(); }

  void get() {
    if (done()) return;
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_ws() {
    while (!done() && (peek() == ' ' || peek() == '\t' || peek() == '\n' ||
                       peek() == '\r'))
      get();
  }

  void record(const std::string& path) {
    out_.emplace(path, SourcePos{line_, col_});
  }

  void append_utf8(std::string& out, unsigned code) {
    if (code < 0x80) {
      out += static_cast<char>(code);
    } else if (code < 0x800) {
      out += static_cast<char>(0xC0 | (code >> 6));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else if (code < 0x10000) {
      out += static_cast<char>(0xE0 | (code >> 12));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (code >> 18));
      out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (code & 0x3F));
    }
  }

  unsigned hex4() {
    unsigned code = 0;
    for (int k = 0; k < 4 && !done(); ++k) {
      char c = peek();
      get();
      code <<= 4;
      if (c >= '0' && c <= '9')
        code |= static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f')
        code |= static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F')
        code |= static_cast<unsigned>(c - 'A' + 10);
    }
    return code;
  }

  std::string string_lit() {
    std::string out;
    get();  // opening quote
    while (!done() && peek() != '"') {
      if (peek() == '\\') {
        get();
        char e = peek();
        get();
        switch (e) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case '/': out += '/'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 't': out += '\t'; break;
          case 'u': {
            unsigned code = hex4();
            if (code >= 0xD800 && code <= 0xDBFF && peek() == '\\') {
              get();
              if (peek() == 'u') {
                get();
                unsigned low = hex4();
                code = 0x10000 + ((code - 0xD800) << 10) + (low - 0xDC00);
              }
            }
            append_utf8(out, code);
            break;
          }
          default: out += e; break;
        }
      } else {
        out += peek();
        get();
      }
    }
    get();  // closing quote
    return out;
  }

  void scalar() {
    while (!done()) {
      char c = peek();
      if (c == ',' || c == '}' || c == ']' || c == ' ' || c == '\t' ||
          c == '\n' || c == '\r')
        return;
      get();
    }
  }

  void value(const std::string& path) {
    switch (peek()) {
      case '{': object(path); break;
      case '[': array(path); break;
      case '"': string_lit(); break;
      default: scalar(); break;
    }
  }

  void object(const std::string& path) {
    get();  // '{'
    skip_ws();
    if (peek() == '}') {
      get();
      return;
    }
    for (;;) {
      skip_ws();
      std::string sub;
      {
        SourcePos key_pos{line_, col_};
        std::string key = string_lit();
        sub = child_path(path, key);
        out_.emplace(sub, key_pos);
      }
      skip_ws();
      get();  // ':'
      skip_ws();
      value(sub);
      skip_ws();
      if (peek() != ',') break;
      get();
    }
    if (peek() == '}') get();
  }

  void array(const std::string& path) {
    get();  // '['
    skip_ws();
    if (peek() == ']') {
      get();
      return;
    }
    std::size_t index = 0;
    for (;;) {
      skip_ws();
      std::string sub = element_path(path, index++);
      record(sub);
      value(sub);
      skip_ws();
      if (peek() != ',') break;
      get();
    }
    if (peek() == ']') get();
  }

  const std::string& text_;
  std::map<std::string, SourcePos>& out_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct ParseContext {
  std::map<std::string, SourcePos> spans;

  SourcePos where(std::string path) const {
    for (;;) {
      auto it = spans.find(path);
      if (it != spans.end()) return it->second;
      if (path.empty()) return SourcePos{1, 1};
      std::size_t slash = path.find_last_of('/');
      path = slash == std::string::npos ? std::string() : path.substr(0, slash);
    }
  }

  [[noreturn]] void error(ErrorCode code, const std::string& path,
                          const std::string& message) const {
    SourcePos pos = where(path);
    fail_at(code, message, pos.line, pos.column);
  }

  void check_fields(const Json& obj, const std::string& path,
                    const std::vector<std::string>& allowed) const {
    for (const auto& item : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) ==
          allowed.end())
        error(ErrorCode::kSchemaError, child_path(path, item.key()),
              "unknown field \"" + item.key() + "\"");
    }
  }

  const Json& field(const Json& obj, const std::string& path,
                    const std::string& name) const {
    auto it = obj.find(name);
    if (it == obj.end())
      error(ErrorCode::kSchemaError, path,
            "missing required field \"" + name + "\"");
    return *it;
  }

  const Json& object_field(const Json& obj, const std::string& path,
                           const std::string& name) const {
    const Json& value = field(obj, path, name);
    if (!value.is_object())
      error(ErrorCode::kSchemaError, child_path(path, name),
            "\"" + name + "\" must be an object");
    return value;
  }

  const Json& array_field(const Json& obj, const std::string& path,
                          const std::string& name) const {
    const Json& value = field(obj, path, name);
    if (!value.is_array())
      error(ErrorCode::kSchemaError, child_path(path, name),
            "\"" + name + "\" must be an array");
    return value;
  }

  int int_at(const Json& value, const std::string& path,
             const std::string& what) const {
    if (!value.is_number_integer())
      error(ErrorCode::kSchemaError, path, what + " must be an integer");
    return value.get<int>();
  }

  double double_at(const Json& value, const std::string& path,
                   const std::string& what) const {
    if (!value.is_number())
      error(ErrorCode::kSchemaError, path, what + " must be a number");
    return value.get<double>();
  }

  std::string string_at(const Json& value, const std::string& path,
                        const std::string& what) const {
    if (!value.is_string())
      error(ErrorCode::kSchemaError, path, what + " must be a string");
    return value.get<std::string>();
  }

  Complex complex_at(const Json& value, const std::string& path) const {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() ||
        !value[1].is_number())
      error(ErrorCode::kSchemaError, path,
            "complex entries are [re, im] number pairs");
    return Complex(value[0].get<double>(), value[1].get<double>());
  }

  PayoffVector payoff_at(const Json& value, const std::string& path,
                         int num_players) const {
    if (!value.is_array())
      error(ErrorCode::kSchemaError, path, "payoff must be an array");
    if (static_cast<int>(value.size()) != num_players)
      error(ErrorCode::kSchemaError, path,
            "payoff must list one value per player (" +
                std::to_string(num_players) + ")");
    PayoffVector u;
    for (std::size_t i = 0; i < value.size(); ++i)
      u.push_back(double_at(value[i], element_path(path, i), "payoff entry"));
    return u;
  }
};

QuantumGameSpec parse_quantum(const Json& root, const ParseContext& ctx) {
  ctx.check_fields(root, "",
                   {"kind", "players", "qudits", "initial_state", "operators",
                    "classes", "player_fn", "payoffs"});
  QuantumGameSpec spec;

  spec.num_players =
      ctx.int_at(ctx.field(root, "", "players"), "/players", "\"players\"");
  if (spec.num_players < 1)
    ctx.error(ErrorCode::kSchemaError, "/players",
              "\"players\" must be at least 1");

  const Json& qudits = ctx.array_field(root, "", "qudits");
  if (qudits.empty())
    ctx.error(ErrorCode::kSchemaError, "/qudits",
              "\"qudits\" needs at least one dimension");
  for (std::size_t j = 0; j < qudits.size(); ++j) {
    int d = ctx.int_at(qudits[j], element_path("/qudits", j),
                       "qudit dimension");
    if (d < 2)
      ctx.error(ErrorCode::kSchemaError, element_path("/qudits", j),
                "qudit dimension must be at least 2");
    spec.dims.push_back(d);
  }
  std::size_t total_dim = 1;
  for (int d : spec.dims) total_dim *= static_cast<std::size_t>(d);

  const Json& state = ctx.object_field(root, "", "initial_state");
  ctx.check_fields(state, "/initial_state", {"ghz_like", "amplitudes"});
  bool has_ghz = state.contains("ghz_like");
  bool has_amp = state.contains("amplitudes");
  if (has_ghz == has_amp)
    ctx.error(ErrorCode::kSchemaError, "/initial_state",
              "\"initial_state\" needs exactly one of \"ghz_like\" or "
              "\"amplitudes\"");
  if (has_ghz) {
    const Json& ghz =
        ctx.object_field(state, "/initial_state", "ghz_like");
    ctx.check_fields(ghz, "/initial_state/ghz_like", {"gamma"});
    spec.ghz_gamma =
        ctx.double_at(ctx.field(ghz, "/initial_state/ghz_like", "gamma"),
                      "/initial_state/ghz_like/gamma", "\"gamma\"");
  } else {
    const Json& amp = state["amplitudes"];
    if (!amp.is_array())
      ctx.error(ErrorCode::kSchemaError, "/initial_state/amplitudes",
                "\"amplitudes\" must be an array");
    if (amp.size() != total_dim)
      ctx.error(ErrorCode::kSchemaError, "/initial_state/amplitudes",
                "expected " + std::to_string(total_dim) +
                    " amplitudes for the register, got " +
                    std::to_string(amp.size()));
    for (std::size_t i = 0; i < amp.size(); ++i)
      spec.amplitudes.push_back(ctx.complex_at(
          amp[i], element_path("/initial_state/amplitudes", i)));
  }

  const Json& operators = ctx.array_field(root, "", "operators");
  if (operators.size() != spec.dims.size())
    ctx.error(ErrorCode::kSchemaError, "/operators",
              "\"operators\" must list one menu per qudit (" +
                  std::to_string(spec.dims.size()) + ")");
  for (std::size_t j = 0; j < operators.size(); ++j) {
    std::string menu_path = element_path("/operators", j);
    const Json& menu = operators[j];
    OperatorMenuSpec menu_spec;
    if (menu.is_string()) {
      if (menu.get<std::string>() != "basis_shift")
        ctx.error(ErrorCode::kSchemaError, menu_path,
                  "the only named menu is \"basis_shift\"");
      menu_spec.basis_shift = true;
    } else if (menu.is_array()) {
      if (menu.empty())
        ctx.error(ErrorCode::kSchemaError, menu_path, "empty operator menu");
      int d = spec.dims[j];
      for (std::size_t k = 0; k < menu.size(); ++k) {
        std::string op_path = element_path(menu_path, k);
        const Json& op = menu[k];
        if (!op.is_object())
          ctx.error(ErrorCode::kSchemaError, op_path,
                    "operator entries are {\"name\", \"matrix\"} objects");
        ctx.check_fields(op, op_path, {"name", "matrix"});
        std::string name =
            ctx.string_at(ctx.field(op, op_path, "name"),
                          child_path(op_path, "name"), "operator name");
        const Json& matrix = ctx.field(op, op_path, "matrix");
        std::string matrix_path = child_path(op_path, "matrix");
        if (!matrix.is_array() || static_cast<int>(matrix.size()) != d)
          ctx.error(ErrorCode::kSchemaError, matrix_path,
                    "matrix must have " + std::to_string(d) + " rows");
        CMat m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (std::size_t r = 0; r < matrix.size(); ++r) {
          const Json& row = matrix[r];
          std::string row_path = element_path(matrix_path, r);
          if (!row.is_array() || static_cast<int>(row.size()) != d)
            ctx.error(ErrorCode::kSchemaError, row_path,
                      "matrix row must have " + std::to_string(d) +
                          " entries");
          for (std::size_t c = 0; c < row.size(); ++c)
            m(r, c) = ctx.complex_at(row[c], element_path(row_path, c));
        }
        Unitary u;
        try {
          u = Unitary(m);
        } catch (const Error&) {
          ctx.error(ErrorCode::kSchemaError, matrix_path,
                    "operator \"" + name + "\" is not unitary");
        }
        menu_spec.named.push_back(NamedOperator{name, u});
      }
    } else {
      ctx.error(ErrorCode::kSchemaError, menu_path,
                "operator menus are \"basis_shift\" or operator lists");
    }
    spec.operators.push_back(std::move(menu_spec));
  }

  const Json& classes = ctx.array_field(root, "", "classes");
  std::vector<OutcomeClass> parsed_classes;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string path = element_path("/classes", i);
    std::string key = ctx.string_at(classes[i], path, "class key");
    OutcomeClass cls;
    try {
      cls = OutcomeClass::from_key(key);
    } catch (const Error& e) {
      ctx.error(ErrorCode::kSchemaError, path, e.what());
    }
    for (const ClassStep& step : cls.steps())
      if (step.qudit > static_cast<int>(spec.dims.size()))
        ctx.error(ErrorCode::kReferenceError, path,
                  "class \"" + key + "\" references qudit " +
                      std::to_string(step.qudit) + " of a " +
                      std::to_string(spec.dims.size()) + "-qudit register");
    if (!spec.classes.insert(key).second)
      ctx.error(ErrorCode::kSchemaError, path,
                "duplicate class \"" + key + "\"");
    parsed_classes.push_back(cls);
  }

  const Json& player_fn = ctx.object_field(root, "", "player_fn");
  for (const auto& item : player_fn.items()) {
    std::string path = child_path("/player_fn", item.key());
    if (!spec.classes.count(item.key()))
      ctx.error(ErrorCode::kReferenceError, path,
                "unknown class \"" + item.key() + "\"");
    int player = ctx.int_at(item.value(), path, "mover");
    if (player < 1 || player > spec.num_players)
      ctx.error(ErrorCode::kReferenceError, path,
                "player " + std::to_string(player) + " of a " +
                    std::to_string(spec.num_players) + "-player game");
    spec.player_fn[item.key()] = player;
  }

  // Terminal classes: no other declared class extends them.
  std::set<std::string> terminal;
  for (const OutcomeClass& cls : parsed_classes) {
    bool extended = false;
    for (const OutcomeClass& other : parsed_classes)
      if (other != cls && cls.is_prefix_of(other)) {
        extended = true;
        break;
      }
    if (!extended) terminal.insert(cls.key());
  }

  const Json& payoffs = ctx.object_field(root, "", "payoffs");
  for (const auto& item : payoffs.items()) {
    std::string path = child_path("/payoffs", item.key());
    if (!spec.classes.count(item.key()))
      ctx.error(ErrorCode::kReferenceError, path,
                "unknown class \"" + item.key() + "\"");
    if (!terminal.count(item.key()))
      ctx.error(ErrorCode::kSchemaError, path,
                "payoff assigned to nonterminal class \"" + item.key() +
                    "\"");
    spec.payoffs[item.key()] =
        ctx.payoff_at(item.value(), path, spec.num_players);
  }
  for (const std::string& key : terminal)
    if (!spec.payoffs.count(key))
      ctx.error(ErrorCode::kSchemaError, "/payoffs",
                "missing payoff for terminal class \"" + key + "\"");

  return spec;
}

std::vector<std::string> split_history_key(const std::string& key) {
  std::vector<std::string> labels;
  if (key.empty()) return labels;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = key.find(',', start);
    if (comma == std::string::npos) {
      labels.push_back(key.substr(start));
      return labels;
    }
    labels.push_back(key.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string join_history_key(const std::vector<std::string>& labels) {
  std::string key;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i > 0) key += ',';
    key += labels[i];
  }
  return key;
}

ClassicalGameSpec parse_classical(const Json& root, const ParseContext& ctx) {
  ctx.check_fields(root, "",
                   {"kind", "players", "histories", "player_fn", "chance",
                    "info_sets", "payoffs"});
  ClassicalGameSpec spec;

  spec.num_players =
      ctx.int_at(ctx.field(root, "", "players"), "/players", "\"players\"");
  if (spec.num_players < 1)
    ctx.error(ErrorCode::kSchemaError, "/players",
              "\"players\" must be at least 1");

  const Json& histories = ctx.array_field(root, "", "histories");
  for (std::size_t i = 0; i < histories.size(); ++i) {
    std::string path = element_path("/histories", i);
    const Json& entry = histories[i];
    if (!entry.is_array())
      ctx.error(ErrorCode::kSchemaError, path,
                "histories are arrays of action labels");
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < entry.size(); ++k) {
      std::string label = ctx.string_at(entry[k], element_path(path, k),
                                        "action label");
      if (label.find(',') != std::string::npos)
        ctx.error(ErrorCode::kSchemaError, element_path(path, k),
                  "action labels may not contain ','");
      labels.push_back(std::move(label));
    }
    std::string key = join_history_key(labels);
    if (!spec.histories.insert(key).second)
      ctx.error(ErrorCode::kSchemaError, path,
                "duplicate history \"" + key + "\"");
  }

  const Json& player_fn = ctx.object_field(root, "", "player_fn");
  for (const auto& item : player_fn.items()) {
    std::string path = child_path("/player_fn", item.key());
    if (!spec.histories.count(item.key()))
      ctx.error(ErrorCode::kReferenceError, path,
                "unknown history \"" + item.key() + "\"");
    int player = 0;
    if (item.value().is_string()) {
      if (item.value().get<std::string>() != "chance")
        ctx.error(ErrorCode::kSchemaError, path,
                  "mover must be a player index or \"chance\"");
    } else {
      player = ctx.int_at(item.value(), path, "mover");
      if (player < 0 || player > spec.num_players)
        ctx.error(ErrorCode::kReferenceError, path,
                  "player " + std::to_string(player) + " of a " +
                      std::to_string(spec.num_players) + "-player game");
    }
    spec.player_fn[item.key()] = player;
  }

  if (root.contains("chance")) {
    const Json& chance = ctx.object_field(root, "", "chance");
    for (const auto& item : chance.items()) {
      std::string path = child_path("/chance", item.key());
      if (!spec.histories.count(item.key()))
        ctx.error(ErrorCode::kReferenceError, path,
                  "unknown history \"" + item.key() + "\"");
      if (!item.value().is_object())
        ctx.error(ErrorCode::kSchemaError, path,
                  "chance distributions map actions to probabilities");
      std::map<std::string, double> dist;
      for (const auto& entry : item.value().items()) {
        std::string entry_path = child_path(path, entry.key());
        std::string extended = item.key().empty()
                                   ? entry.key()
                                   : item.key() + "," + entry.key();
        if (!spec.histories.count(extended))
          ctx.error(ErrorCode::kReferenceError, entry_path,
                    "no history for action \"" + entry.key() +
                        "\" after \"" + item.key() + "\"");
        dist[entry.key()] =
            ctx.double_at(entry.value(), entry_path, "probability");
      }
      spec.chance[item.key()] = std::move(dist);
    }
  }

  const Json& info_sets = ctx.array_field(root, "", "info_sets");
  if (static_cast<int>(info_sets.size()) != spec.num_players)
    ctx.error(ErrorCode::kSchemaError, "/info_sets",
              "\"info_sets\" must list one partition per player (" +
                  std::to_string(spec.num_players) + ")");
  for (std::size_t p = 0; p < info_sets.size(); ++p) {
    std::string player_path = element_path("/info_sets", p);
    const Json& cells = info_sets[p];
    if (!cells.is_array())
      ctx.error(ErrorCode::kSchemaError, player_path,
                "a partition is an array of cells");
    std::set<std::set<std::string>> partition;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::string cell_path = element_path(player_path, c);
      const Json& cell = cells[c];
      if (!cell.is_array())
        ctx.error(ErrorCode::kSchemaError, cell_path,
                  "a cell is an array of history keys");
      std::set<std::string> members;
      for (std::size_t m = 0; m < cell.size(); ++m) {
        std::string member_path = element_path(cell_path, m);
        std::string key =
            ctx.string_at(cell[m], member_path, "history key");
        if (!spec.histories.count(key))
          ctx.error(ErrorCode::kReferenceError, member_path,
                    "unknown history \"" + key + "\"");
        members.insert(std::move(key));
      }
      partition.insert(std::move(members));
    }
    spec.info_sets.push_back(std::move(partition));
  }

  std::set<std::string> terminal;
  for (const std::string& key : spec.histories) {
    bool extended = false;
    for (const std::string& other : spec.histories) {
      if (other == key) continue;
      if (key.empty() ? !other.empty()
                      : other.size() > key.size() &&
                            other.compare(0, key.size(), key) == 0 &&
                            other[key.size()] == ',') {
        extended = true;
        break;
      }
    }
    if (!extended) terminal.insert(key);
  }

  const Json& payoffs = ctx.object_field(root, "", "payoffs");
  for (const auto& item : payoffs.items()) {
    std::string path = child_path("/payoffs", item.key());
    if (!spec.histories.count(item.key()))
      ctx.error(ErrorCode::kReferenceError, path,
                "unknown history \"" + item.key() + "\"");
    if (!terminal.count(item.key()))
      ctx.error(ErrorCode::kSchemaError, path,
                "payoff assigned to nonterminal history \"" + item.key() +
                    "\"");
    spec.payoffs[item.key()] =
        ctx.payoff_at(item.value(), path, spec.num_players);
  }
  for (const std::string& key : terminal)
    if (!spec.payoffs.count(key))
      ctx.error(ErrorCode::kSchemaError, "/payoffs",
                "missing payoff for terminal history \"" + key + "\"");

  return spec;
}

OrderedJson complex_json(const Complex& z) {
  return OrderedJson::array({z.real(), z.imag()});
}

}  // namespace

GameDocument parse_game(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Recover line/column from the byte offset; keep the library's
    // description of what was expected.
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    offset = std::min(offset, text.size());
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string message = e.what();
    std::size_t bracket = message.find("] ");
    if (bracket != std::string::npos) message = message.substr(bracket + 2);
    fail_at(ErrorCode::kSyntaxError, message, line, col);
  }

  ParseContext ctx;
  SpanScanner(text, ctx.spans).run();

  if (!root.is_object())
    ctx.error(ErrorCode::kSchemaError, "",
              "a game document must be an object");

  GameDocument doc;
  doc.kind = ctx.string_at(ctx.field(root, "", "kind"), "/kind", "\"kind\"");
  if (doc.kind == "quantum") {
    doc.quantum = parse_quantum(root, ctx);
  } else if (doc.kind == "classical") {
    doc.classical = parse_classical(root, ctx);
  } else {
    ctx.error(ErrorCode::kSchemaError, "/kind",
              "\"kind\" must be \"classical\" or \"quantum\"");
  }
  doc.source_span = std::move(ctx.spans);
  return doc;
}

std::string serialize_game(const GameDocument& doc) {
  OrderedJson j;
  j["kind"] = doc.kind;
  if (doc.kind == "quantum") {
    const QuantumGameSpec& q = doc.quantum;
    j["players"] = q.num_players;
    j["qudits"] = q.dims;
    if (q.ghz_gamma) {
      j["initial_state"]["ghz_like"]["gamma"] = *q.ghz_gamma;
    } else {
      OrderedJson amps = OrderedJson::array();
      for (const Complex& z : q.amplitudes) amps.push_back(complex_json(z));
      j["initial_state"]["amplitudes"] = std::move(amps);
    }
    OrderedJson menus = OrderedJson::array();
    for (const OperatorMenuSpec& menu : q.operators) {
      if (menu.basis_shift) {
        menus.push_back("basis_shift");
        continue;
      }
      OrderedJson ops = OrderedJson::array();
      for (const NamedOperator& named : menu.named) {
        OrderedJson op = OrderedJson::object();
        op["name"] = named.name;
        const CMat& m = named.op.matrix();
        OrderedJson rows = OrderedJson::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
          OrderedJson row = OrderedJson::array();
          for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(complex_json(m(r, c)));
          rows.push_back(std::move(row));
        }
        op["matrix"] = std::move(rows);
        ops.push_back(std::move(op));
      }
      menus.push_back(std::move(ops));
    }
    j["operators"] = std::move(menus);
    j["classes"] = q.classes;
    OrderedJson movers = OrderedJson::object();
    for (const auto& [key, player] : q.player_fn) movers[key] = player;
    j["player_fn"] = std::move(movers);
    OrderedJson pay = OrderedJson::object();
    for (const auto& [key, u] : q.payoffs) pay[key] = u;
    j["payoffs"] = std::move(pay);
  } else {
    const ClassicalGameSpec& c = doc.classical;
    j["players"] = c.num_players;
    OrderedJson hist = OrderedJson::array();
    for (const std::string& key : c.histories)
      hist.push_back(split_history_key(key));
    j["histories"] = std::move(hist);
    OrderedJson movers = OrderedJson::object();
    for (const auto& [key, player] : c.player_fn) {
      if (player == kChance)
        movers[key] = "chance";
      else
        movers[key] = player;
    }
    j["player_fn"] = std::move(movers);
    if (!c.chance.empty()) {
      OrderedJson chance = OrderedJson::object();
      for (const auto& [key, dist] : c.chance) {
        OrderedJson d = OrderedJson::object();
        for (const auto& [action, prob] : dist) d[action] = prob;
        chance[key] = std::move(d);
      }
      j["chance"] = std::move(chance);
    }
    OrderedJson partitions = OrderedJson::array();
    for (const auto& partition : c.info_sets) {
      OrderedJson cells = OrderedJson::array();
      for (const auto& cell : partition) {
        OrderedJson members = OrderedJson::array();
        for (const std::string& key : cell) members.push_back(key);
        cells.push_back(std::move(members));
      }
      partitions.push_back(std::move(cells));
    }
    j["info_sets"] = std::move(partitions);
    OrderedJson pay = OrderedJson::object();
    for (const auto& [key, u] : c.payoffs) pay[key] = u;
    j["payoffs"] = std::move(pay);
  }
  return j.dump(2) + "\n";
}

GameDocument load_game_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    fail(ErrorCode::kIoError, "cannot read file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_game(buffer.str());
}

QuantumExtensiveGame to_quantum_game(const GameDocument& doc) {
  if (doc.kind != "quantum")
    fail(ErrorCode::kSchemaError, "not a quantum game document");
  const QuantumGameSpec& spec = doc.quantum;

  QuantumExtensiveGame game;
  QuantumGameForm& form = game.form;
  form.num_players = spec.num_players;

  QuditLayout layout(spec.dims);
  if (spec.ghz_gamma)
    form.initial_state = ghz_like_state(layout, *spec.ghz_gamma);
  else
    form.initial_state = build_state(layout, spec.amplitudes);

  for (std::size_t j = 0; j < spec.operators.size(); ++j) {
    const OperatorMenuSpec& menu = spec.operators[j];
    if (menu.basis_shift) {
      std::vector<NamedOperator> shifts;
      int d = spec.dims[j];
      for (int t = 0; t < d; ++t)
        shifts.push_back(NamedOperator{"V" + std::to_string(t),
                                       basis_shift_operator(d, t)});
      form.operator_sets.push_back(std::move(shifts));
    } else {
      form.operator_sets.push_back(menu.named);
    }
  }

  for (const std::string& key : spec.classes)
    form.classes.classes.insert(OutcomeClass::from_key(key));
  for (const auto& [key, player] : spec.player_fn)
    form.player_fn[OutcomeClass::from_key(key)] = player;
  for (const auto& [key, u] : spec.payoffs)
    game.payoffs[OutcomeClass::from_key(key)] = u;
  return game;
}

ExtensiveGame to_classical_game(const GameDocument& doc) {
  if (doc.kind != "classical")
    fail(ErrorCode::kSchemaError, "not a classical game document");
  const ClassicalGameSpec& spec = doc.classical;

  ExtensiveGame game;
  GameForm& form = game.form;
  form.num_players = spec.num_players;
  for (const std::string& key : spec.histories)
    form.histories.insert(History(split_history_key(key)));
  for (const auto& [key, player] : spec.player_fn)
    form.player_fn[History(split_history_key(key))] = player;
  for (const auto& [key, dist] : spec.chance)
    form.chance_fn[History(split_history_key(key))] = dist;
  for (const auto& partition : spec.info_sets) {
    std::vector<std::set<History>> cells;
    for (const auto& cell : partition) {
      std::set<History> members;
      for (const std::string& key : cell)
        members.insert(History(split_history_key(key)));
      cells.push_back(std::move(members));
    }
    form.info_partition.push_back(std::move(cells));
  }
  for (const auto& [key, u] : spec.payoffs)
    game.utilities[History(split_history_key(key))] = u;
  return game;
}

QStrategyProfile parse_profile_spec(const std::string& spec,
                                    const QuantumExtensiveGame& game) {
  std::vector<QInformationSet> sets = information_sets(game.form);
  // Per player, her information-set qudits in partition order.
  std::map<int, std::vector<int>> player_sets;
  for (const QInformationSet& set : sets)
    player_sets[set.player].push_back(set.qudit);

  auto trim = [](std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.pop_back();
    return s;
  };
  auto parse_int = [&](const std::string& text, const std::string& what) {
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      fail(ErrorCode::kProfileSpecError,
           "malformed " + what + " \"" + text + "\"");
    return value;
  };

  QStrategyProfile profile;
  std::size_t start = 0;
  while (start <= spec.size()) {
    std::size_t comma = spec.find(',', start);
    std::string entry = trim(spec.substr(
        start, comma == std::string::npos ? std::string::npos
                                          : comma - start));
    start = comma == std::string::npos ? spec.size() + 1 : comma + 1;
    if (entry.empty())
      fail(ErrorCode::kProfileSpecError,
           "empty entry in profile spec \"" + spec + "\"");

    std::size_t colon = entry.find(':');
    if (colon == std::string::npos)
      fail(ErrorCode::kProfileSpecError,
           "entry \"" + entry + "\" is not of the form player:operator");
    std::string who = trim(entry.substr(0, colon));
    std::string op_name = trim(entry.substr(colon + 1));
    if (op_name.empty())
      fail(ErrorCode::kProfileSpecError,
           "entry \"" + entry + "\" names no operator");

    int player = 0;
    int set_index = 0;  // 1-based; 0 = unspecified
    std::size_t slash = who.find('/');
    if (slash == std::string::npos) {
      player = parse_int(who, "player index");
    } else {
      player = parse_int(trim(who.substr(0, slash)), "player index");
      set_index = parse_int(trim(who.substr(slash + 1)), "set index");
    }

    auto it = player_sets.find(player);
    if (player < 1 || player > game.form.num_players)
      fail(ErrorCode::kProfileSpecError,
           "unknown player " + std::to_string(player));
    if (it == player_sets.end())
      fail(ErrorCode::kProfileSpecError,
           "player " + std::to_string(player) + " never moves");
    const std::vector<int>& qudits = it->second;
    if (set_index == 0) {
      if (qudits.size() != 1)
        fail(ErrorCode::kProfileSpecError,
             "player " + std::to_string(player) + " has " +
                 std::to_string(qudits.size()) +
                 " information sets; use player/setIndex:operator");
      set_index = 1;
    }
    if (set_index < 1 || set_index > static_cast<int>(qudits.size()))
      fail(ErrorCode::kProfileSpecError,
           "player " + std::to_string(player) + " has no information set " +
               std::to_string(set_index));
    int qudit = qudits[static_cast<std::size_t>(set_index - 1)];

    if (profile.choices.count({player, qudit}))
      fail(ErrorCode::kProfileSpecError,
           "duplicate choice for player " + std::to_string(player) +
               " information set " + std::to_string(set_index));

    const auto& menu =
        game.form.operator_sets[static_cast<std::size_t>(qudit - 1)];
    const NamedOperator* found = nullptr;
    for (const NamedOperator& named : menu)
      if (named.name == op_name) {
        found = &named;
        break;
      }
    if (!found)
      fail(ErrorCode::kProfileSpecError,
           "unknown operator \"" + op_name + "\" for qudit " +
               std::to_string(qudit));
    profile.choices[{player, qudit}] = *found;
  }

  for (const QInformationSet& set : sets)
    if (!profile.choices.count({set.player, set.qudit}))
      fail(ErrorCode::kProfileSpecError,
           "no choice for player " + std::to_string(set.player) +
               " on qudit " + std::to_string(set.qudit));
  return profile;
}

}  // namespace qeg
