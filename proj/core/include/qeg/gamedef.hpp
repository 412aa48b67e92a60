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

#ifndef QEG_GAMEDEF_HPP_
#define QEG_GAMEDEF_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qeg/extensive_game.hpp"
#include "qeg/quantum_game.hpp"

namespace qeg {

// Line/column of a token in a game file; both 1-based, 0 when unknown.
struct SourcePos {
  int line = 0;
  int column = 0;
};

// One qudit's operator menu as written in the file: either the built-in
// shift family or an explicit list of named matrices.
struct OperatorMenuSpec {
  bool basis_shift = false;
  std::vector<NamedOperator> named;

  friend bool operator==(const OperatorMenuSpec&,
                         const OperatorMenuSpec&) = default;
};

// Quantum game body in file terms: class keys and map keys stay strings so
// the document round-trips byte-for-byte through serialize_game.
struct QuantumGameSpec {
  int num_players = 0;
  std::vector<int> dims;
  // Exactly one of ghz_gamma / amplitudes describes the initial state.
  std::optional<double> ghz_gamma;
  std::vector<Complex> amplitudes;
  std::vector<OperatorMenuSpec> operators;
  std::set<std::string> classes;
  std::map<std::string, int> player_fn;
  std::map<std::string, PayoffVector> payoffs;

  friend bool operator==(const QuantumGameSpec&,
                         const QuantumGameSpec&) = default;
};

// Classical game body in file terms; histories are keyed by their
// comma-joined action labels, the root by "". Player 0 is the chance mover.
struct ClassicalGameSpec {
  int num_players = 0;
  std::set<std::string> histories;
  std::map<std::string, int> player_fn;
  std::map<std::string, std::map<std::string, double>> chance;
  // info_sets[i - 1] is player i's partition, cells as history-key sets.
  std::vector<std::set<std::set<std::string>>> info_sets;
  std::map<std::string, PayoffVector> payoffs;

  friend bool operator==(const ClassicalGameSpec&,
                         const ClassicalGameSpec&) = default;
};

// A parsed game file. Exactly one of the two bodies is populated, selected
// by `kind`. source_span maps a JSON-pointer-style path to the position of
// the corresponding token; it carries diagnostics only and is ignored by
// equality.
struct GameDocument {
  std::string kind;  // "classical" or "quantum"
  QuantumGameSpec quantum;
  ClassicalGameSpec classical;
  std::map<std::string, SourcePos> source_span;

  friend bool operator==(const GameDocument& a, const GameDocument& b) {
    return a.kind == b.kind && a.quantum == b.quantum &&
           a.classical == b.classical;
  }
};

// Parses a game file. Malformed text raises SyntaxError with the position
// and the tokens expected there; missing or mistyped fields raise
// SchemaError; dangling keys (unknown class, history, or player) raise
// ReferenceError. Every diagnostic carries line/column.
GameDocument parse_game(const std::string& text);

// Canonical serialization: fixed field order, map keys sorted, two-space
// indentation, trailing newline. parse_game(serialize_game(doc)) == doc.
std::string serialize_game(const GameDocument& doc);

// Reads and parses a file. Throws IoError when unreadable.
GameDocument load_game_file(const std::string& path);

// Builds the playable quantum game from a quantum document. Throws
// SchemaError on a kind mismatch; state and operator errors propagate.
QuantumExtensiveGame to_quantum_game(const GameDocument& doc);

// Builds the classical game from a classical document.
ExtensiveGame to_classical_game(const GameDocument& doc);

// Parses a strategy-profile spec of comma-separated entries
// "player:operatorName", or "player/setIndex:operatorName" (1-based set
// index) for players with several information sets. Every information set
// must be covered exactly once; violations raise ProfileSpecError.
QStrategyProfile parse_profile_spec(const std::string& spec,
                                    const QuantumExtensiveGame& game);

}  // namespace qeg

#endif  // QEG_GAMEDEF_HPP_
