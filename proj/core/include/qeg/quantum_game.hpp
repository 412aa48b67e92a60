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

#ifndef QEG_QUANTUM_GAME_HPP_
#define QEG_QUANTUM_GAME_HPP_

#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qeg/extensive_game.hpp"
#include "qeg/state.hpp"

namespace qeg {

// One measurement step: the qudit acted on and the outcome observed.
struct ClassStep {
  int qudit = 0;
  int outcome = 0;

  auto operator<=>(const ClassStep&) const = default;
};

// An equivalence class of move sequences, identified by its (qudit, outcome)
// steps; operators are quotiented out. The empty sequence is the start.
class OutcomeClass {
 public:
  OutcomeClass() = default;
  // Throws RepeatedQudit on a duplicated qudit, ParamOutOfRange on a
  // non-positive qudit index or negative outcome.
  explicit OutcomeClass(std::vector<ClassStep> steps);

  static OutcomeClass initial() { return OutcomeClass(); }

  const std::vector<ClassStep>& steps() const { return steps_; }
  std::size_t length() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }

  OutcomeClass prefix(std::size_t len) const;
  OutcomeClass parent() const;  // throws UnknownClass on the start class
  OutcomeClass extended(int qudit, int outcome) const;
  const ClassStep& last_step() const;
  bool is_prefix_of(const OutcomeClass& other) const;

  // Steps joined with ',' as "outcome@qudit"; the start class is "".
  std::string key() const;
  // Parses the key() encoding. Throws SyntaxError.
  static OutcomeClass from_key(const std::string& text);

  auto operator<=>(const OutcomeClass&) const = default;

 private:
  std::vector<ClassStep> steps_;
};

struct ClassCollection {
  std::set<OutcomeClass> classes;
};

// A unitary together with the name used by strategy profiles and files.
struct NamedOperator {
  std::string name;
  Unitary op;

  friend bool operator==(const NamedOperator&, const NamedOperator&) = default;
};

// The quantum game form: players, a shared register state, per-qudit
// operator menus, the outcome-class tree, and the mover function.
struct QuantumGameForm {
  int num_players = 0;
  StateVector initial_state;
  // operator_sets[j - 1] is the menu for qudit j.
  std::vector<std::vector<NamedOperator>> operator_sets;
  ClassCollection classes;
  // Defined exactly on nonterminal classes, values in 1..num_players.
  std::map<OutcomeClass, int> player_fn;
};

struct QuantumExtensiveGame {
  QuantumGameForm form;
  // Defined exactly on terminal classes; vectors of length num_players.
  std::map<OutcomeClass, PayoffVector> payoffs;
};

// The nonterminal classes where player `player` moves on qudit `qudit`.
struct QInformationSet {
  int player = 0;
  int qudit = 0;
  std::vector<OutcomeClass> members;
};

// One operator choice per (player, qudit) information set.
struct QStrategyProfile {
  std::map<std::pair<int, int>, NamedOperator> choices;
};

// Structural checks on the class tree: the start class is present, every
// class keeps all outcome-siblings at every prefix length, children of one
// class act on a single qudit, and steps fit the register layout.
ValidationReport validate_classes(const ClassCollection& collection,
                                  const QuditLayout& layout);

// validate_classes plus register/player/operator-menu/mover checks: at
// least one player and enough qudits, every menu holds the full shift
// family (up to per-column phases) under distinct well-formed names, and
// the mover function covers exactly the nonterminal classes.
ValidationReport validate_form(const QuantumGameForm& form);

// validate_form plus payoff coverage (exactly the terminal classes, vectors
// of length num_players).
ValidationReport validate_game(const QuantumExtensiveGame& game);

// Classes with no one-step extension in the collection, ascending.
std::vector<OutcomeClass> terminal_classes(const QuantumGameForm& form);

// The unique qudit on which all extensions of `cls` act. Throws
// UnknownClass if `cls` is not a member, TerminalClass if nothing extends it.
int next_qudit(const QuantumGameForm& form, const OutcomeClass& cls);

// Partition of the nonterminal classes by (mover, next qudit), ordered by
// player then qudit.
std::vector<QInformationSet> information_sets(const QuantumGameForm& form);

// Diagonal of the projector selecting basis states that agree with the
// class's fixed outcomes (free qudits unconstrained). Exact 0/1 entries.
std::vector<int> class_projector_diagonal(const QuditLayout& layout,
                                          const OutcomeClass& cls);

// The payoff observable: one real diagonal per player, each the sum over
// terminal classes of payoff times the class projector.
struct PayoffOperator {
  std::vector<std::vector<double>> player_diagonals;
};

PayoffOperator payoff_operator(const QuantumExtensiveGame& game);

// True iff terminal-class projectors have pairwise zero products and sum to
// the identity. Integer arithmetic; exact.
bool check_projector_orthogonality(const QuantumExtensiveGame& game);

// The payoff vector attached to a terminal class. With `verify_trace` set,
// additionally drives a shift-operator run realizing the class and checks
// that the payoff observable's expectation on the collapsed state matches
// within 1e-9, throwing NotARealization otherwise.
// Throws UnknownClass / NotTerminal.
PayoffVector class_utility(const QuantumExtensiveGame& game,
                           const OutcomeClass& cls, bool verify_trace = false);

// A terminal class reached by a profile, with its path probability and the
// concrete run (moves, collapsed state).
struct QTerminalRun {
  OutcomeClass cls;
  double probability = 0.0;
  RunResult run;
};

// Simulates the class tree under `profile`: at each nonterminal class the
// assigned player's operator for (player, next qudit) is applied, the qudit
// measured, and every outcome branch followed. Branches below the pruning
// tolerance are dropped; probabilities sum to 1. Results ascend by class.
// Throws IncompleteProfile on a missing choice, DimensionMismatch on an
// operator of the wrong dimension.
std::vector<QTerminalRun> play_profile(const QuantumExtensiveGame& game,
                                       const QStrategyProfile& profile);

// Sum over play_profile of probability times the terminal payoff vector.
PayoffVector expected_utility(const QuantumExtensiveGame& game,
                              const QStrategyProfile& profile);

// A deterministic run realizing a terminal class: per step, the smallest
// basis shift giving the step's outcome a probability above the pruning
// tolerance. Throws UnknownClass / NotTerminal.
RunResult class_representative_run(const QuantumExtensiveGame& game,
                                   const OutcomeClass& cls);

// The classical extensive game on class representatives: one history per
// class, action labels keyed by "outcome@qudit", movers, information sets,
// and payoffs transported verbatim.
ExtensiveGame representative_game(const QuantumExtensiveGame& game);

// Same tree with representative operator names sampled uniformly from each
// step qudit's menu and baked into the action labels. Structurally
// isomorphic to the canonical output for every seed; labels may differ
// between information-set members, so only label-insensitive consumers
// (isomorphism search) should read the result.
ExtensiveGame representative_game_sampled(const QuantumExtensiveGame& game,
                                          std::mt19937& rng);

// True with a witnessing history bijection (classical histories to
// representative histories) iff `cgame` is isomorphic to the representative
// game of `qgame`. Throws ChanceNotSupported if `cgame` has chance nodes.
std::optional<HistoryMap> check_realization(const QuantumExtensiveGame& qgame,
                                            const ExtensiveGame& cgame);

}  // namespace qeg

#endif  // QEG_QUANTUM_GAME_HPP_
