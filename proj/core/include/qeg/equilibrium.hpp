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

#ifndef QEG_EQUILIBRIUM_HPP_
#define QEG_EQUILIBRIUM_HPP_

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qeg/quantum_game.hpp"

namespace qeg {

// The exhaustive profile table of a quantum game with finite operator
// menus: per player, her pure strategies (one operator choice per
// information set) with printable labels, and the expected payoff of every
// complete profile, flattened with player 1's index varying slowest.
struct ProfileTable {
  std::vector<std::vector<std::string>> strategy_labels;
  // strategies[p - 1][s] carries only player p's choices.
  std::vector<std::vector<QStrategyProfile>> strategies;
  std::vector<PayoffVector> payoffs;

  std::size_t profile_count() const { return payoffs.size(); }
  std::size_t flat_index(const std::vector<int>& profile) const;
  std::vector<int> profile_at(std::size_t flat) const;

  // Merges the players' strategy fragments into one playable profile.
  QStrategyProfile assemble(const std::vector<int>& profile) const;
  // Per-player strategy labels joined with ';'.
  std::string profile_label(const std::vector<int>& profile) const;
};

// Enumerates every complete profile and evaluates its expected utility.
// Profile evaluations run in parallel; results land by index, so the table
// is deterministic. Throws ExplosionGuard beyond `max_profiles`.
ProfileTable build_profile_table(const QuantumExtensiveGame& game,
                                 std::size_t max_profiles = kMaxProfiles);

// Profiles from which no unilateral deviation improves the deviator by
// more than the tie tolerance. Ascending flat order.
std::vector<std::vector<int>> pure_nash_quantum(const ProfileTable& table);

// For each player, u_i(profile) - u_i(deviation) over her alternative
// strategies in ascending index order (the incumbent strategy is skipped).
std::vector<std::vector<double>> deviation_gaps(const ProfileTable& table,
                                                const std::vector<int>& profile);

// One sweep point: the entanglement angle, the equilibrium profile labels,
// and the expected payoffs of each equilibrium.
struct SweepRow {
  double gamma = 0.0;
  std::vector<std::string> equilibrium_labels;
  std::vector<PayoffVector> payoffs;
};

// `count` uniform interior points of (lo, hi): lo + k (hi-lo)/(count+1).
std::vector<double> open_interval_grid(double lo, double hi, int count);

// Rebuilds the game per grid angle and records its equilibria. Rows keep
// the order of `gammas`. Errors from `make_game` (e.g. GammaOutOfRange)
// propagate.
std::vector<SweepRow> sweep_gamma(
    const std::function<QuantumExtensiveGame(double)>& make_game,
    const std::vector<double>& gammas);

// CSV with header gamma,equilibrium_label,u_1,...,u_n; one line per row;
// several equilibria in one row are joined with '|' field-wise. Numbers are
// printed with %.12g, so equal inputs give byte-identical output.
void write_sweep_csv(const std::vector<SweepRow>& rows, int num_players,
                     std::ostream& out);

// Side-by-side equilibrium comparison of a quantum game and a classical
// game it realizes.
struct ClassicalComparison {
  std::vector<std::vector<int>> classical_equilibria;
  std::vector<PayoffVector> classical_payoffs;
  // Per player, the worst payoff across the classical equilibria (empty
  // when there are none).
  PayoffVector classical_guarantee;
  std::vector<std::vector<int>> quantum_equilibria;
  std::vector<PayoffVector> quantum_payoffs;
  // Quantum equilibria whose payoffs strictly exceed the classical
  // guarantee in every coordinate.
  std::vector<bool> dominates_guarantee;
  // (quantum index, classical index) pairs where the quantum payoffs
  // strictly exceed the classical ones for every player.
  std::vector<std::pair<int, int>> pareto_improvements;
};

// Throws NotARealization if `cgame` is not realized by `qgame`, and
// ChanceNotSupported for chance-bearing classical games.
ClassicalComparison classical_comparison(const QuantumExtensiveGame& qgame,
                                         const ExtensiveGame& cgame);

}  // namespace qeg

#endif  // QEG_EQUILIBRIUM_HPP_
