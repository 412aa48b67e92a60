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

#include "qeg/extensive_game.hpp"

#include <algorithm>
#include <cmath>

namespace qeg {

bool approx_equal(const PayoffVector& a, const PayoffVector& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

History History::prefix(std::size_t len) const {
  if (len > actions_.size())
    fail(ErrorCode::kUnknownHistory, "prefix length exceeds history length");
  return History(std::vector<std::string>(actions_.begin(),
                                          actions_.begin() + static_cast<std::ptrdiff_t>(len)));
}

History History::parent() const {
  if (actions_.empty())
    fail(ErrorCode::kUnknownHistory, "the root history has no parent");
  return prefix(actions_.size() - 1);
}

History History::extended(const std::string& action) const {
  std::vector<std::string> next = actions_;
  next.push_back(action);
  return History(std::move(next));
}

const std::string& History::last_action() const {
  if (actions_.empty())
    fail(ErrorCode::kUnknownHistory, "the root history has no last action");
  return actions_.back();
}

bool History::is_prefix_of(const History& other) const {
  if (actions_.size() > other.actions_.size()) return false;
  return std::equal(actions_.begin(), actions_.end(), other.actions_.begin());
}

std::string History::key() const {
  std::string out;
  for (std::size_t i = 0; i < actions_.size(); ++i) {
    if (i > 0) out += ',';
    out += actions_[i];
  }
  return out;
}

namespace {

using ChildMap = std::map<History, std::vector<std::pair<std::string, History>>>;

// Children of every history, keyed by parent, sorted by action label.
ChildMap child_map(const GameForm& form) {
  ChildMap children;
  for (const History& h : form.histories) {
    children.try_emplace(h);
    if (!h.empty()) {
      History parent = h.parent();
      children[parent].push_back({h.last_action(), h});
    }
  }
  for (auto& [h, kids] : children) std::sort(kids.begin(), kids.end());
  return children;
}

// Per player (1-based), each history's information-set index.
std::vector<std::map<History, int>> cell_index(const GameForm& form) {
  std::vector<std::map<History, int>> idx(
      static_cast<std::size_t>(form.num_players));
  for (std::size_t p = 0; p < form.info_partition.size() &&
                          p < static_cast<std::size_t>(form.num_players);
       ++p) {
    for (std::size_t c = 0; c < form.info_partition[p].size(); ++c)
      for (const History& h : form.info_partition[p][c])
        idx[p][h] = static_cast<int>(c);
  }
  return idx;
}

}  // namespace

std::vector<History> terminal_histories(const GameForm& form) {
  ChildMap children = child_map(form);
  std::vector<History> terminals;
  for (const History& h : form.histories)
    if (children[h].empty()) terminals.push_back(h);
  return terminals;
}

std::vector<std::string> actions_at(const GameForm& form, const History& h) {
  if (!form.histories.count(h))
    fail(ErrorCode::kUnknownHistory, "history '" + h.key() + "' is not in the game");
  std::vector<std::string> actions;
  for (const History& other : form.histories)
    if (other.length() == h.length() + 1 && h.is_prefix_of(other))
      actions.push_back(other.last_action());
  std::sort(actions.begin(), actions.end());
  return actions;
}

ValidationReport validate_form(const GameForm& form) {
  ValidationReport report;
  if (form.num_players < 1) {
    report.add("players", "a game needs at least one player");
    return report;
  }
  if (form.histories.empty() || !form.histories.count(History::root())) {
    report.add("histories", "the empty history must be present");
    return report;
  }
  for (const History& h : form.histories) {
    if (!h.empty() && !form.histories.count(h.parent()))
      report.add("prefix-closure",
                 "history '" + h.key() + "' lacks its parent");
    for (const std::string& a : h.actions())
      if (a.empty() || a.find(',') != std::string::npos)
        report.add("action-label",
                   "history '" + h.key() + "' uses an empty label or one containing ','");
  }

  ChildMap children = child_map(form);
  std::set<History> nonterminals;
  for (const auto& [h, kids] : children)
    if (!kids.empty()) nonterminals.insert(h);

  for (const History& h : nonterminals) {
    auto it = form.player_fn.find(h);
    if (it == form.player_fn.end()) {
      report.add("mover", "nonterminal '" + h.key() + "' has no mover");
      continue;
    }
    if (it->second != kChance &&
        (it->second < 1 || it->second > form.num_players))
      report.add("mover", "history '" + h.key() + "' names player " +
                              std::to_string(it->second));
  }
  for (const auto& [h, p] : form.player_fn)
    if (!nonterminals.count(h))
      report.add("mover", "terminal or unknown history '" + h.key() +
                              "' appears in the mover function");

  // Chance distributions: exactly one per chance node, supported on the
  // node's full action set, summing to 1.
  for (const auto& [h, p] : form.player_fn) {
    if (p != kChance) continue;
    auto it = form.chance_fn.find(h);
    if (it == form.chance_fn.end()) {
      report.add("chance", "chance node '" + h.key() + "' has no distribution");
      continue;
    }
    double total = 0.0;
    std::set<std::string> actions;
    for (const auto& [a, child] : children[h]) actions.insert(a);
    for (const auto& [a, prob] : it->second) {
      if (!actions.count(a))
        report.add("chance", "chance node '" + h.key() +
                                 "' assigns probability to unknown action '" + a + "'");
      if (prob < 0.0)
        report.add("chance", "chance node '" + h.key() +
                                 "' has a negative probability");
      total += prob;
      actions.erase(a);
    }
    for (const std::string& a : actions)
      report.add("chance", "chance node '" + h.key() +
                               "' misses a probability for action '" + a + "'");
    if (std::abs(total - 1.0) > kEqTol)
      report.add("chance",
                 "chance node '" + h.key() + "' probabilities sum to " +
                     std::to_string(total));
  }
  for (const auto& [h, dist] : form.chance_fn) {
    auto it = form.player_fn.find(h);
    if (it == form.player_fn.end() || it->second != kChance)
      report.add("chance", "distribution attached to non-chance history '" +
                               h.key() + "'");
  }

  if (form.info_partition.size() != static_cast<std::size_t>(form.num_players)) {
    report.add("information-sets",
               "expected one partition per player, got " +
                   std::to_string(form.info_partition.size()));
    return report;
  }

  // Information sets: per player, a partition of exactly her histories, with
  // equal action sets inside every cell.
  for (int player = 1; player <= form.num_players; ++player) {
    const auto& cells = form.info_partition[static_cast<std::size_t>(player - 1)];
    std::set<History> seen;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].empty())
        report.add("information-sets", "player " + std::to_string(player) +
                                           " has an empty information set");
      std::vector<std::string> reference;
      bool first = true;
      for (const History& h : cells[c]) {
        if (seen.count(h))
          report.add("information-sets",
                     "history '" + h.key() + "' appears in two sets of player " +
                         std::to_string(player));
        seen.insert(h);
        auto it = form.player_fn.find(h);
        if (it == form.player_fn.end() || it->second != player) {
          report.add("information-sets",
                     "history '" + h.key() + "' is not a decision node of player " +
                         std::to_string(player));
          continue;
        }
        std::vector<std::string> actions;
        for (const auto& [a, child] : children[h]) actions.push_back(a);
        if (first) {
          reference = actions;
          first = false;
        } else if (actions != reference) {
          report.add("information-sets",
                     "history '" + h.key() +
                         "' has a different action set than its information set");
        }
      }
    }
    for (const auto& [h, p] : form.player_fn)
      if (p == player && !seen.count(h))
        report.add("information-sets",
                   "history '" + h.key() + "' of player " +
                       std::to_string(player) + " is in no information set");
  }
  if (!report.ok()) return report;

  // Perfect recall: within an information set, every history shows the
  // player the same sequence of (information set, own action) pairs.
  std::vector<std::map<History, int>> cells_of = cell_index(form);
  for (int player = 1; player <= form.num_players; ++player) {
    const auto& cells = form.info_partition[static_cast<std::size_t>(player - 1)];
    for (std::size_t c = 0; c < cells.size(); ++c) {
      std::vector<std::pair<int, std::string>> reference;
      bool first = true;
      for (const History& h : cells[c]) {
        std::vector<std::pair<int, std::string>> experience;
        for (std::size_t len = 0; len < h.length(); ++len) {
          History p = h.prefix(len);
          auto it = form.player_fn.find(p);
          if (it != form.player_fn.end() && it->second == player)
            experience.push_back(
                {cells_of[static_cast<std::size_t>(player - 1)].at(p),
                 h.actions()[len]});
        }
        if (first) {
          reference = experience;
          first = false;
        } else if (experience != reference) {
          report.add("perfect-recall",
                     "player " + std::to_string(player) +
                         " cannot distinguish histories with different own pasts "
                         "(e.g. '" +
                         h.key() + "')");
        }
      }
    }
  }
  return report;
}

ValidationReport validate_game(const ExtensiveGame& game) {
  ValidationReport report = validate_form(game.form);
  if (!report.ok()) return report;
  std::set<History> terminals;
  for (const History& h : terminal_histories(game.form)) terminals.insert(h);
  for (const History& h : terminals) {
    auto it = game.utilities.find(h);
    if (it == game.utilities.end())
      report.add("utilities", "terminal '" + h.key() + "' has no payoff");
    else if (it->second.size() != static_cast<std::size_t>(game.form.num_players))
      report.add("utilities",
                 "terminal '" + h.key() + "' has " +
                     std::to_string(it->second.size()) + " payoff entries");
  }
  for (const auto& [h, u] : game.utilities)
    if (!terminals.count(h))
      report.add("utilities",
                 "payoff attached to non-terminal history '" + h.key() + "'");
  return report;
}

std::vector<WeightedTerminal> consistent_terminals(
    const ExtensiveGame& game, const StrategyProfile& profile) {
  const GameForm& form = game.form;
  if (profile.size() != static_cast<std::size_t>(form.num_players))
    fail(ErrorCode::kIncompleteProfile,
         "expected " + std::to_string(form.num_players) + " strategies, got " +
             std::to_string(profile.size()));
  ChildMap children = child_map(form);
  std::vector<std::map<History, int>> cells_of = cell_index(form);

  std::vector<WeightedTerminal> out;
  // Depth-first, actions ascending, so the output order is deterministic.
  struct Frame {
    History h;
    double prob;
  };
  std::vector<Frame> stack{{History::root(), 1.0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const auto& kids = children[f.h];
    if (kids.empty()) {
      out.push_back(WeightedTerminal{f.h, f.prob});
      continue;
    }
    const int mover = form.player_fn.at(f.h);
    if (mover == kChance) {
      auto dist_it = form.chance_fn.find(f.h);
      if (dist_it == form.chance_fn.end())
        fail(ErrorCode::kSchemaError,
             "chance node '" + f.h.key() + "' has no distribution");
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
        auto p = dist_it->second.find(it->first);
        stack.push_back(
            {it->second, f.prob * (p == dist_it->second.end() ? 0.0 : p->second)});
      }
      continue;
    }
    const auto& cell_map = cells_of[static_cast<std::size_t>(mover - 1)];
    auto cell_it = cell_map.find(f.h);
    if (cell_it == cell_map.end())
      fail(ErrorCode::kIncompleteProfile,
           "history '" + f.h.key() + "' is in no information set");
    const auto& choices = profile[static_cast<std::size_t>(mover - 1)].choices;
    auto choice_it = choices.find(cell_it->second);
    if (choice_it == choices.end())
      fail(ErrorCode::kIncompleteProfile,
           "player " + std::to_string(mover) + " has no choice at '" +
               f.h.key() + "'");
    History next = f.h.extended(choice_it->second);
    if (!form.histories.count(next))
      fail(ErrorCode::kIncompleteProfile,
           "action '" + choice_it->second + "' is unavailable at '" +
               f.h.key() + "'");
    stack.push_back({next, f.prob});
  }
  std::sort(out.begin(), out.end(),
            [](const WeightedTerminal& a, const WeightedTerminal& b) {
              return a.history < b.history;
            });
  return out;
}

std::size_t StrategicForm::flat_index(const std::vector<int>& profile) const {
  std::size_t flat = 0;
  for (std::size_t p = 0; p < strategies.size(); ++p)
    flat = flat * strategies[p].size() + static_cast<std::size_t>(profile[p]);
  return flat;
}

std::vector<int> StrategicForm::profile_at(std::size_t flat) const {
  std::vector<int> profile(strategies.size());
  for (std::size_t p = strategies.size(); p-- > 0;) {
    profile[p] = static_cast<int>(flat % strategies[p].size());
    flat /= strategies[p].size();
  }
  return profile;
}

StrategicForm strategic_form(const ExtensiveGame& game,
                             std::size_t max_profiles) {
  const GameForm& form = game.form;
  ChildMap children = child_map(form);

  StrategicForm table;
  std::size_t total = 1;
  for (int player = 1; player <= form.num_players; ++player) {
    const auto& cells = form.info_partition[static_cast<std::size_t>(player - 1)];
    // Available actions per information set, in stored set order.
    std::vector<std::vector<std::string>> menu;
    for (const auto& cell : cells) {
      std::vector<std::string> actions;
      for (const auto& [a, child] : children[*cell.begin()]) actions.push_back(a);
      menu.push_back(std::move(actions));
    }
    std::vector<PureStrategy> strategies{{}};
    for (std::size_t c = 0; c < menu.size(); ++c) {
      std::vector<PureStrategy> next;
      for (const PureStrategy& partial : strategies)
        for (const std::string& a : menu[c]) {
          PureStrategy s = partial;
          s.choices[static_cast<int>(c)] = a;
          next.push_back(std::move(s));
        }
      strategies = std::move(next);
    }
    std::vector<std::string> labels;
    for (const PureStrategy& s : strategies) {
      std::string label;
      for (const auto& [cell, a] : s.choices) {
        if (!label.empty()) label += '/';
        label += a;
      }
      labels.push_back(label.empty() ? "-" : label);
    }
    if (total > max_profiles / strategies.size())
      fail(ErrorCode::kExplosionGuard,
           "profile table would exceed " + std::to_string(max_profiles) +
               " entries");
    total *= strategies.size();
    table.strategies.push_back(std::move(strategies));
    table.strategy_labels.push_back(std::move(labels));
  }

  table.payoffs.resize(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<int> profile = table.profile_at(flat);
    StrategyProfile chosen;
    for (std::size_t p = 0; p < table.strategies.size(); ++p)
      chosen.push_back(table.strategies[p][static_cast<std::size_t>(profile[p])]);
    PayoffVector expect(static_cast<std::size_t>(form.num_players), 0.0);
    for (const WeightedTerminal& t : consistent_terminals(game, chosen)) {
      const PayoffVector& u = game.utilities.at(t.history);
      for (std::size_t i = 0; i < expect.size(); ++i)
        expect[i] += t.probability * u[i];
    }
    table.payoffs[flat] = std::move(expect);
  }
  return table;
}

std::vector<std::vector<int>> pure_nash(const StrategicForm& table) {
  const std::size_t players = table.strategies.size();
  // Flat-index stride of each player's strategy coordinate.
  std::vector<std::size_t> stride(players, 1);
  for (std::size_t p = players; p-- > 1;)
    stride[p - 1] = stride[p] * table.strategies[p].size();

  std::vector<std::vector<int>> equilibria;
  for (std::size_t flat = 0; flat < table.payoffs.size(); ++flat) {
    std::vector<int> profile = table.profile_at(flat);
    bool stable = true;
    for (std::size_t p = 0; p < players && stable; ++p) {
      const double incumbent = table.payoffs[flat][p];
      const std::size_t base =
          flat - static_cast<std::size_t>(profile[p]) * stride[p];
      for (std::size_t alt = 0; alt < table.strategies[p].size(); ++alt) {
        if (static_cast<int>(alt) == profile[p]) continue;
        const std::size_t dev = base + alt * stride[p];
        if (table.payoffs[dev][p] > incumbent) {
          stable = false;
          break;
        }
      }
    }
    if (stable) equilibria.push_back(std::move(profile));
  }
  return equilibria;
}

ValidationReport check_isomorphism(const ExtensiveGame& a,
                                   const ExtensiveGame& b,
                                   const HistoryMap& xi) {
  // Bijectivity is a hard precondition; everything else is reported.
  if (xi.size() != a.form.histories.size())
    fail(ErrorCode::kNotABijection, "map does not cover the first history set");
  std::set<History> image;
  for (const auto& [h1, h2] : xi) {
    if (!a.form.histories.count(h1))
      fail(ErrorCode::kNotABijection, "'" + h1.key() + "' is not a history of the first game");
    if (!b.form.histories.count(h2))
      fail(ErrorCode::kNotABijection, "'" + h2.key() + "' is not a history of the second game");
    if (!image.insert(h2).second)
      fail(ErrorCode::kNotABijection, "'" + h2.key() + "' is hit twice");
  }
  if (image.size() != b.form.histories.size())
    fail(ErrorCode::kNotABijection, "map does not cover the second history set");

  ValidationReport report;
  if (a.form.num_players != b.form.num_players) {
    report.add("players", "player counts differ");
    return report;
  }
  if (xi.at(History::root()) != History::root()) {
    report.add("root", "the empty history must map to the empty history");
    return report;  // downstream conditions presuppose tree alignment
  }

  for (const auto& [h1, h2] : xi) {
    if (h1.empty()) continue;
    if (h2.empty() || xi.at(h1.parent()) != h2.parent()) {
      report.add("prefix", "'" + h1.key() + "' and its image break prefix preservation");
      return report;  // downstream conditions presuppose tree alignment
    }
  }

  ChildMap children_a = child_map(a.form);
  for (const auto& [h1, h2] : xi) {
    const bool terminal_a = children_a[h1].empty();
    auto mover_a = a.form.player_fn.find(h1);
    auto mover_b = b.form.player_fn.find(h2);
    if (terminal_a) {
      const PayoffVector& u1 = a.utilities.at(h1);
      const PayoffVector& u2 = b.utilities.at(h2);
      if (!approx_equal(u1, u2, kEqTol))
        report.add("utilities",
                   "payoffs differ at '" + h1.key() + "' -> '" + h2.key() + "'");
      continue;
    }
    if (mover_b == b.form.player_fn.end() ||
        mover_a->second != mover_b->second) {
      report.add("mover", "movers differ at '" + h1.key() + "'");
      continue;
    }
    if (mover_a->second == kChance) {
      const auto& dist_a = a.form.chance_fn.at(h1);
      const auto& dist_b = b.form.chance_fn.at(h2);
      for (const auto& [action, child] : children_a[h1]) {
        const std::string& mapped_action = xi.at(child).last_action();
        auto pa = dist_a.find(action);
        auto pb = dist_b.find(mapped_action);
        if (pa == dist_a.end() || pb == dist_b.end() ||
            std::abs(pa->second - pb->second) > kEqTol)
          report.add("chance", "chance probabilities differ at '" + h1.key() +
                                   "' action '" + action + "'");
      }
    }
  }

  for (int player = 1; player <= a.form.num_players; ++player) {
    const auto& cells_a = a.form.info_partition[static_cast<std::size_t>(player - 1)];
    const auto& cells_b = b.form.info_partition[static_cast<std::size_t>(player - 1)];
    for (const auto& cell : cells_a) {
      std::set<History> mapped;
      for (const History& h : cell) mapped.insert(xi.at(h));
      if (std::find(cells_b.begin(), cells_b.end(), mapped) == cells_b.end())
        report.add("information-sets",
                   "the image of one of player " + std::to_string(player) +
                       "'s information sets is not an information set");
    }
  }
  return report;
}

namespace {

struct IsoSearcher {
  const ExtensiveGame& a;
  const ExtensiveGame& b;
  ChildMap children_a;
  ChildMap children_b;
  std::vector<std::map<History, int>> cells_a;
  std::vector<std::map<History, int>> cells_b;
  // Partial information-set correspondence per player, with an undo trail.
  std::vector<std::map<int, int>> cell_fwd, cell_bwd;
  std::vector<std::pair<int, int>> undo;  // (player-1, cell index in a)
  HistoryMap result;

  bool bind_cells(int player, int ca, int cb) {
    auto& fwd = cell_fwd[static_cast<std::size_t>(player - 1)];
    auto& bwd = cell_bwd[static_cast<std::size_t>(player - 1)];
    auto f = fwd.find(ca);
    if (f != fwd.end()) return f->second == cb;
    auto w = bwd.find(cb);
    if (w != bwd.end()) return false;
    fwd[ca] = cb;
    bwd[cb] = ca;
    undo.push_back({player - 1, ca});
    return true;
  }

  void rollback(std::size_t mark) {
    while (undo.size() > mark) {
      auto [p, ca] = undo.back();
      undo.pop_back();
      auto& fwd = cell_fwd[static_cast<std::size_t>(p)];
      auto& bwd = cell_bwd[static_cast<std::size_t>(p)];
      bwd.erase(fwd.at(ca));
      fwd.erase(ca);
    }
  }

  bool match(const History& h1, const History& h2) {
    const auto& kids1 = children_a[h1];
    const auto& kids2 = children_b[h2];
    if (kids1.size() != kids2.size()) return false;
    const std::size_t mark = undo.size();

    if (kids1.empty()) {
      if (!approx_equal(a.utilities.at(h1), b.utilities.at(h2), kEqTol))
        return false;
      result[h1] = h2;
      return true;
    }

    const int mover = a.form.player_fn.at(h1);
    auto mover_b = b.form.player_fn.find(h2);
    if (mover_b == b.form.player_fn.end() || mover_b->second != mover)
      return false;
    if (mover != kChance &&
        !bind_cells(mover,
                    cells_a[static_cast<std::size_t>(mover - 1)].at(h1),
                    cells_b[static_cast<std::size_t>(mover - 1)].at(h2))) {
      rollback(mark);
      return false;
    }

    std::vector<bool> used(kids2.size(), false);
    if (match_children(h1, h2, kids1, kids2, 0, used)) {
      result[h1] = h2;
      return true;
    }
    rollback(mark);
    return false;
  }

  bool match_children(const History& h1, const History& h2,
                      const std::vector<std::pair<std::string, History>>& kids1,
                      const std::vector<std::pair<std::string, History>>& kids2,
                      std::size_t k, std::vector<bool>& used) {
    if (k == kids1.size()) return true;
    const int mover = a.form.player_fn.at(h1);
    for (std::size_t j = 0; j < kids2.size(); ++j) {
      if (used[j]) continue;
      if (mover == kChance) {
        const double pa = a.form.chance_fn.at(h1).at(kids1[k].first);
        const double pb = b.form.chance_fn.at(h2).at(kids2[j].first);
        if (std::abs(pa - pb) > kEqTol) continue;
      }
      const std::size_t mark = undo.size();
      if (match(kids1[k].second, kids2[j].second)) {
        used[j] = true;
        if (match_children(h1, h2, kids1, kids2, k + 1, used)) return true;
        used[j] = false;
      }
      rollback(mark);
      // Remove any partial history assignments from the failed branch.
      prune_result(kids1[k].second);
    }
    return false;
  }

  void prune_result(const History& subtree_root) {
    for (auto it = result.lower_bound(subtree_root); it != result.end();) {
      if (subtree_root.is_prefix_of(it->first))
        it = result.erase(it);
      else
        break;
    }
  }
};

}  // namespace

std::optional<HistoryMap> search_isomorphism(const ExtensiveGame& a,
                                             const ExtensiveGame& b,
                                             std::size_t max_histories) {
  if (a.form.histories.size() > max_histories ||
      b.form.histories.size() > max_histories)
    fail(ErrorCode::kExplosionGuard,
         "history sets exceed " + std::to_string(max_histories) + " entries");
  if (a.form.num_players != b.form.num_players) return std::nullopt;
  if (a.form.histories.size() != b.form.histories.size()) return std::nullopt;

  IsoSearcher searcher{a,
                       b,
                       child_map(a.form),
                       child_map(b.form),
                       cell_index(a.form),
                       cell_index(b.form),
                       std::vector<std::map<int, int>>(
                           static_cast<std::size_t>(a.form.num_players)),
                       std::vector<std::map<int, int>>(
                           static_cast<std::size_t>(a.form.num_players)),
                       {},
                       {}};
  if (!searcher.match(History::root(), History::root())) return std::nullopt;

  // The search binds information sets injectively in both directions; with a
  // full history bijection this makes the correspondence exact, but verify
  // the complete definition once to be safe.
  ValidationReport verdict = check_isomorphism(a, b, searcher.result);
  if (!verdict.ok()) return std::nullopt;
  return searcher.result;
}

}  // namespace qeg
