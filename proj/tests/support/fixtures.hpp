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

#ifndef QEG_TESTS_SUPPORT_FIXTURES_HPP_
#define QEG_TESTS_SUPPORT_FIXTURES_HPP_

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qeg/extensive_game.hpp"
#include "qeg/quantum_game.hpp"
#include "qeg/state.hpp"

namespace fixtures {

inline qeg::History hist(std::vector<std::string> actions) {
  return qeg::History(std::move(actions));
}

// Two-player dilemma in extensive shape: player 2 moves without seeing
// player 1's choice (both of player 2's nodes share one information set).
inline qeg::ExtensiveGame make_dilemma_game() {
  using qeg::History;
  qeg::ExtensiveGame game;
  game.form.num_players = 2;
  for (auto actions : std::vector<std::vector<std::string>>{
           {}, {"C"}, {"D"}, {"C", "c"}, {"C", "d"}, {"D", "c"}, {"D", "d"}})
    game.form.histories.insert(hist(actions));
  game.form.player_fn[hist({})] = 1;
  game.form.player_fn[hist({"C"})] = 2;
  game.form.player_fn[hist({"D"})] = 2;
  game.form.info_partition = {
      {{hist({})}},
      {{hist({"C"}), hist({"D"})}},
  };
  game.utilities[hist({"C", "c"})] = {3, 3};
  game.utilities[hist({"C", "d"})] = {0, 5};
  game.utilities[hist({"D", "c"})] = {5, 0};
  game.utilities[hist({"D", "d"})] = {1, 1};
  return game;
}

// Three-player game on a horse-shaped tree: player 3 cannot tell whether she
// was reached directly (after a0) or via player 2 (after a1, b0).
inline qeg::ExtensiveGame make_horse_game() {
  using qeg::History;
  qeg::ExtensiveGame game;
  game.form.num_players = 3;
  for (auto actions : std::vector<std::vector<std::string>>{
           {},
           {"a0"},
           {"a1"},
           {"a0", "c0"},
           {"a0", "c1"},
           {"a1", "b0"},
           {"a1", "b1"},
           {"a1", "b0", "c0"},
           {"a1", "b0", "c1"}})
    game.form.histories.insert(hist(actions));
  game.form.player_fn[hist({})] = 1;
  game.form.player_fn[hist({"a1"})] = 2;
  game.form.player_fn[hist({"a0"})] = 3;
  game.form.player_fn[hist({"a1", "b0"})] = 3;
  game.form.info_partition = {
      {{hist({})}},
      {{hist({"a1"})}},
      {{hist({"a0"}), hist({"a1", "b0"})}},
  };
  game.utilities[hist({"a0", "c0"})] = {3, 3, 1};
  game.utilities[hist({"a0", "c1"})] = {0, 0, 0};
  game.utilities[hist({"a1", "b1"})] = {2, 2, 2};
  game.utilities[hist({"a1", "b0", "c0"})] = {5, 5, 0};
  game.utilities[hist({"a1", "b0", "c1"})] = {0, 0, 1};
  return game;
}

// One player guessing after a coin flip she can observe.
inline qeg::ExtensiveGame make_coin_game() {
  using qeg::History;
  qeg::ExtensiveGame game;
  game.form.num_players = 1;
  for (auto actions : std::vector<std::vector<std::string>>{
           {}, {"h"}, {"t"}, {"h", "l"}, {"h", "r"}, {"t", "l"}, {"t", "r"}})
    game.form.histories.insert(hist(actions));
  game.form.player_fn[hist({})] = qeg::kChance;
  game.form.player_fn[hist({"h"})] = 1;
  game.form.player_fn[hist({"t"})] = 1;
  game.form.chance_fn[hist({})] = {{"h", 0.25}, {"t", 0.75}};
  game.form.info_partition = {
      {{hist({"h"})}, {hist({"t"})}},
  };
  game.utilities[hist({"h", "l"})] = {4};
  game.utilities[hist({"h", "r"})] = {0};
  game.utilities[hist({"t", "l"})] = {0};
  game.utilities[hist({"t", "r"})] = {2};
  return game;
}

// Rebuilds `game` with every edge label replaced by `rename(parent, label)`.
// Returns the transformed game and the witnessing history bijection.
inline std::pair<qeg::ExtensiveGame, qeg::HistoryMap> relabel_game(
    const qeg::ExtensiveGame& game,
    const std::function<std::string(const qeg::History&, const std::string&)>&
        rename) {
  qeg::HistoryMap xi;
  xi[qeg::History::root()] = qeg::History::root();
  for (const qeg::History& h : game.form.histories) {
    if (h.empty()) continue;
    // Parents precede children in the set's order, so xi.at(parent) exists.
    xi[h] = xi.at(h.parent()).extended(rename(h.parent(), h.last_action()));
  }

  qeg::ExtensiveGame out;
  out.form.num_players = game.form.num_players;
  for (const auto& [h, image] : xi) out.form.histories.insert(image);
  for (const auto& [h, p] : game.form.player_fn) out.form.player_fn[xi.at(h)] = p;
  for (const auto& [h, dist] : game.form.chance_fn) {
    for (const auto& [action, prob] : dist)
      out.form.chance_fn[xi.at(h)][rename(h, action)] = prob;
  }
  for (const auto& cells : game.form.info_partition) {
    std::vector<std::set<qeg::History>> mapped_cells;
    for (const auto& cell : cells) {
      std::set<qeg::History> mapped;
      for (const qeg::History& h : cell) mapped.insert(xi.at(h));
      mapped_cells.push_back(std::move(mapped));
    }
    out.form.info_partition.push_back(std::move(mapped_cells));
  }
  for (const auto& [h, u] : game.utilities) out.utilities[xi.at(h)] = u;
  return {out, xi};
}

// Random perfect-information game tree (every decision node is its own
// information set), with occasional chance nodes. Always validates.
inline qeg::ExtensiveGame random_tree_game(std::mt19937& rng, int num_players,
                                           int max_depth, int max_branch) {
  qeg::ExtensiveGame game;
  game.form.num_players = num_players;
  game.form.histories.insert(qeg::History::root());

  std::uniform_int_distribution<int> branch_dist(2, max_branch);
  std::uniform_int_distribution<int> mover_dist(0, num_players);  // 0 = chance
  std::uniform_int_distribution<int> payoff_dist(-5, 9);
  std::uniform_real_distribution<double> weight_dist(0.1, 1.0);

  std::function<void(const qeg::History&, int)> grow =
      [&](const qeg::History& h, int depth) {
        const bool leaf =
            depth >= max_depth ||
            (depth > 0 && std::uniform_int_distribution<int>(0, 2)(rng) == 0);
        if (leaf) {
          qeg::PayoffVector u;
          for (int p = 0; p < num_players; ++p)
            u.push_back(static_cast<double>(payoff_dist(rng)));
          game.utilities[h] = std::move(u);
          return;
        }
        const int mover = mover_dist(rng);
        game.form.player_fn[h] = mover;
        const int branches = branch_dist(rng);
        std::vector<std::string> labels;
        for (int b = 0; b < branches; ++b)
          labels.push_back("m" + std::to_string(b));
        if (mover == qeg::kChance) {
          double total = 0.0;
          std::vector<double> weights;
          for (int b = 0; b < branches; ++b) {
            weights.push_back(weight_dist(rng));
            total += weights.back();
          }
          for (int b = 0; b < branches; ++b)
            game.form.chance_fn[h][labels[static_cast<std::size_t>(b)]] =
                weights[static_cast<std::size_t>(b)] / total;
        }
        for (const std::string& label : labels) {
          qeg::History child = h.extended(label);
          game.form.histories.insert(child);
          grow(child, depth + 1);
        }
      };
  grow(qeg::History::root(), 0);

  game.form.info_partition.assign(static_cast<std::size_t>(num_players), {});
  for (const auto& [h, mover] : game.form.player_fn)
    if (mover != qeg::kChance)
      game.form.info_partition[static_cast<std::size_t>(mover - 1)].push_back(
          {h});
  return game;
}

inline qeg::OutcomeClass cls(const std::string& key) {
  return qeg::OutcomeClass::from_key(key);
}

inline qeg::NamedOperator named_shift(int d, int t) {
  return qeg::NamedOperator{"V" + std::to_string(t),
                            qeg::basis_shift_operator(d, t)};
}

// The menu {V_0, ..., V_{d-1}} of zero-phase shifts.
inline std::vector<qeg::NamedOperator> shift_menu(int d) {
  std::vector<qeg::NamedOperator> menu;
  for (int t = 0; t < d; ++t) menu.push_back(named_shift(d, t));
  return menu;
}

inline qeg::QStrategyProfile qprofile(
    std::map<std::pair<int, int>, qeg::NamedOperator> choices) {
  qeg::QStrategyProfile profile;
  profile.choices = std::move(choices);
  return profile;
}

// Quantum counterpart of the dilemma: an entangled qubit pair, player j
// acting on qubit j, measured qubit 1 then qubit 2. Optional padding qudits
// are appended to the register but never played.
inline qeg::QuantumExtensiveGame make_dilemma_qgame(double gamma,
                                                    int extra_qubits = 0) {
  qeg::QuantumExtensiveGame game;
  game.form.num_players = 2;
  std::vector<int> dims(static_cast<std::size_t>(2 + extra_qubits), 2);
  game.form.initial_state =
      qeg::ghz_like_state(qeg::QuditLayout(dims), gamma);
  for (std::size_t j = 0; j < dims.size(); ++j)
    game.form.operator_sets.push_back(shift_menu(2));

  auto& classes = game.form.classes.classes;
  classes.insert(cls(""));
  for (int v1 = 0; v1 < 2; ++v1) {
    classes.insert(cls(std::to_string(v1) + "@1"));
    for (int v2 = 0; v2 < 2; ++v2)
      classes.insert(
          cls(std::to_string(v1) + "@1," + std::to_string(v2) + "@2"));
  }
  game.form.player_fn[cls("")] = 1;
  game.form.player_fn[cls("0@1")] = 2;
  game.form.player_fn[cls("1@1")] = 2;

  game.payoffs[cls("0@1,0@2")] = {3, 3};
  game.payoffs[cls("0@1,1@2")] = {0, 5};
  game.payoffs[cls("1@1,0@2")] = {5, 0};
  game.payoffs[cls("1@1,1@2")] = {1, 1};
  return game;
}

// Quantum counterpart of the horse game: three entangled qubits; qubit 1 is
// measured first, a 1-outcome routes through qubit 2, and qubit 3 belongs
// to player 3 in both branches of her information set.
inline qeg::QuantumExtensiveGame make_horse_qgame(double gamma) {
  qeg::QuantumExtensiveGame game;
  game.form.num_players = 3;
  game.form.initial_state =
      qeg::ghz_like_state(qeg::QuditLayout({2, 2, 2}), gamma);
  for (int j = 0; j < 3; ++j) game.form.operator_sets.push_back(shift_menu(2));

  auto& classes = game.form.classes.classes;
  for (const char* key :
       {"", "0@1", "1@1", "0@1,0@3", "0@1,1@3", "1@1,0@2", "1@1,1@2",
        "1@1,0@2,0@3", "1@1,0@2,1@3"})
    classes.insert(cls(key));

  game.form.player_fn[cls("")] = 1;
  game.form.player_fn[cls("1@1")] = 2;
  game.form.player_fn[cls("0@1")] = 3;
  game.form.player_fn[cls("1@1,0@2")] = 3;

  game.payoffs[cls("0@1,0@3")] = {3, 3, 1};
  game.payoffs[cls("0@1,1@3")] = {0, 0, 0};
  game.payoffs[cls("1@1,1@2")] = {2, 2, 2};
  game.payoffs[cls("1@1,0@2,0@3")] = {5, 5, 0};
  game.payoffs[cls("1@1,0@2,1@3")] = {0, 0, 1};
  return game;
}

}  // namespace fixtures

#endif  // QEG_TESTS_SUPPORT_FIXTURES_HPP_
