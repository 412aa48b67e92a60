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

#ifndef QEG_EXTENSIVE_GAME_HPP_
#define QEG_EXTENSIVE_GAME_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qeg/errors.hpp"
#include "qeg/tolerances.hpp"

namespace qeg {

// One utility value per player, indexed by player - 1.
using PayoffVector = std::vector<double>;

bool approx_equal(const PayoffVector& a, const PayoffVector& b, double tol);

// Mover id reserved for chance nodes.
inline constexpr int kChance = 0;

// A finite sequence of action labels; the empty sequence is the root.
class History {
 public:
  History() = default;
  explicit History(std::vector<std::string> actions)
      : actions_(std::move(actions)) {}

  static History root() { return History(); }

  const std::vector<std::string>& actions() const { return actions_; }
  std::size_t length() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }

  History prefix(std::size_t len) const;
  History parent() const;  // throws UnknownHistory on the root
  History extended(const std::string& action) const;
  const std::string& last_action() const;
  bool is_prefix_of(const History& other) const;

  // Action labels joined with ','; the root's key is the empty string.
  std::string key() const;

  auto operator<=>(const History&) const = default;

 private:
  std::vector<std::string> actions_;
};

struct Violation {
  std::string category;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(const std::string& category, const std::string& detail) {
    violations.push_back(Violation{category, detail});
  }
};

// An extensive game form: prefix-closed histories, mover function (with
// chance), chance distributions, and per-player information partitions.
struct GameForm {
  int num_players = 0;
  std::set<History> histories;
  // Defined exactly on nonterminal histories; kChance marks chance nodes.
  std::map<History, int> player_fn;
  // Per chance history, a distribution over its available actions.
  std::map<History, std::map<std::string, double>> chance_fn;
  // info_partition[i - 1] is player i's list of information sets.
  std::vector<std::vector<std::set<History>>> info_partition;
};

struct ExtensiveGame {
  GameForm form;
  std::map<History, PayoffVector> utilities;  // terminal -> per-player payoff
};

// Histories with no extension in the set, in ascending order.
std::vector<History> terminal_histories(const GameForm& form);

// Action labels available at `h`, ascending. Throws UnknownHistory.
std::vector<std::string> actions_at(const GameForm& form, const History& h);

// Structural checks: prefix closure, mover-function domain, chance
// distributions, information partitions with equal action sets, and perfect
// recall. Violations are reported, not thrown.
ValidationReport validate_form(const GameForm& form);

// validate_form plus utility coverage (every terminal carries exactly one
// PayoffVector of length num_players).
ValidationReport validate_game(const ExtensiveGame& game);

// One player's plan: a chosen action per information set, keyed by the
// set's index within info_partition[player - 1].
struct PureStrategy {
  std::map<int, std::string> choices;
};

// One strategy per player, indexed by player - 1.
using StrategyProfile = std::vector<PureStrategy>;

struct WeightedTerminal {
  History history;
  double probability = 0.0;  // product of chance probabilities on the path
};

// Terminal histories consistent with the profile, each with its
// chance-induced probability. Deterministic (paths explored in ascending
// action order); probabilities sum to 1.
std::vector<WeightedTerminal> consistent_terminals(
    const ExtensiveGame& game, const StrategyProfile& profile);

// The induced normal form: per-player strategy lists plus a flattened payoff
// table (player 1's strategy index varies slowest).
struct StrategicForm {
  std::vector<std::vector<std::string>> strategy_labels;
  std::vector<std::vector<PureStrategy>> strategies;
  std::vector<PayoffVector> payoffs;

  std::size_t profile_count() const { return payoffs.size(); }
  std::size_t flat_index(const std::vector<int>& profile) const;
  std::vector<int> profile_at(std::size_t flat) const;
};

StrategicForm strategic_form(const ExtensiveGame& game,
                             std::size_t max_profiles = kMaxProfiles);

// All pure-strategy profiles from which no unilateral deviation strictly
// improves the deviator. Exact payoff comparisons. Profiles are returned as
// per-player strategy indices in ascending flat order.
std::vector<std::vector<int>> pure_nash(const StrategicForm& table);

using HistoryMap = std::map<History, History>;

// Verifies that `xi` is a game isomorphism: root/prefix preservation, mover
// equivariance, chance-distribution equality, information-set
// correspondence, and utility equality. Throws NotABijection when `xi` is
// not a bijection between the history sets; condition failures are reported.
ValidationReport check_isomorphism(const ExtensiveGame& a,
                                   const ExtensiveGame& b,
                                   const HistoryMap& xi);

// Backtracking search for an isomorphism; returns the witnessing map or
// nullopt. Deterministic. Throws ExplosionGuard beyond `max_histories`.
std::optional<HistoryMap> search_isomorphism(
    const ExtensiveGame& a, const ExtensiveGame& b,
    std::size_t max_histories = kMaxIsomorphismHistories);

}  // namespace qeg

#endif  // QEG_EXTENSIVE_GAME_HPP_
