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

#include "qeg/quantum_game.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>

namespace qeg {

OutcomeClass::OutcomeClass(std::vector<ClassStep> steps)
    : steps_(std::move(steps)) {
  std::set<int> seen;
  for (const ClassStep& s : steps_) {
    if (s.qudit < 1)
      fail(ErrorCode::kParamOutOfRange,
           "qudit indices are 1-based; got " + std::to_string(s.qudit));
    if (s.outcome < 0)
      fail(ErrorCode::kParamOutOfRange,
           "outcome " + std::to_string(s.outcome) + " is negative");
    if (!seen.insert(s.qudit).second)
      fail(ErrorCode::kRepeatedQudit,
           "qudit " + std::to_string(s.qudit) + " appears twice in one class");
  }
}

OutcomeClass OutcomeClass::prefix(std::size_t len) const {
  if (len > steps_.size())
    fail(ErrorCode::kUnknownClass, "prefix length exceeds class length");
  return OutcomeClass(std::vector<ClassStep>(
      steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(len)));
}

OutcomeClass OutcomeClass::parent() const {
  if (steps_.empty())
    fail(ErrorCode::kUnknownClass, "the start class has no parent");
  return prefix(steps_.size() - 1);
}

OutcomeClass OutcomeClass::extended(int qudit, int outcome) const {
  std::vector<ClassStep> next = steps_;
  next.push_back(ClassStep{qudit, outcome});
  return OutcomeClass(std::move(next));
}

const ClassStep& OutcomeClass::last_step() const {
  if (steps_.empty())
    fail(ErrorCode::kUnknownClass, "the start class has no last step");
  return steps_.back();
}

bool OutcomeClass::is_prefix_of(const OutcomeClass& other) const {
  if (steps_.size() > other.steps_.size()) return false;
  return std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

std::string OutcomeClass::key() const {
  std::string out;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(steps_[i].outcome);
    out += '@';
    out += std::to_string(steps_[i].qudit);
  }
  return out;
}

namespace {

int parse_int_strict(const std::string& text, const std::string& context) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    fail(ErrorCode::kSyntaxError,
         "'" + text + "' is not an integer in " + context);
  return value;
}

}  // namespace

OutcomeClass OutcomeClass::from_key(const std::string& text) {
  if (text.empty()) return OutcomeClass();
  std::vector<ClassStep> steps;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string token = text.substr(start, comma - start);
    const std::size_t at = token.find('@');
    if (at == std::string::npos || token.find('@', at + 1) != std::string::npos)
      fail(ErrorCode::kSyntaxError,
           "class step '" + token + "' is not of the form outcome@qudit");
    steps.push_back(
        ClassStep{parse_int_strict(token.substr(at + 1), "class key"),
                  parse_int_strict(token.substr(0, at), "class key")});
    start = comma + 1;
  }
  return OutcomeClass(std::move(steps));
}

namespace {

// Child classes grouped under their parent, ascending.
std::map<OutcomeClass, std::vector<OutcomeClass>> class_children(
    const ClassCollection& collection) {
  std::map<OutcomeClass, std::vector<OutcomeClass>> children;
  for (const OutcomeClass& cls : collection.classes) {
    children.try_emplace(cls);
    if (!cls.empty()) children[cls.parent()].push_back(cls);
  }
  return children;
}

}  // namespace

ValidationReport validate_classes(const ClassCollection& collection,
                                  const QuditLayout& layout) {
  ValidationReport report;
  if (!collection.classes.count(OutcomeClass::initial()))
    report.add("start", "the empty class must be a member");

  std::set<OutcomeClass> well_laid;
  for (const OutcomeClass& cls : collection.classes) {
    bool ok = true;
    for (const ClassStep& s : cls.steps()) {
      if (s.qudit < 1 || s.qudit > layout.num_qudits()) {
        report.add("steps", "class '" + cls.key() + "' touches qudit " +
                                std::to_string(s.qudit) +
                                " outside the register");
        ok = false;
      } else if (s.outcome >= layout.dim(s.qudit)) {
        report.add("steps", "class '" + cls.key() + "' records outcome " +
                                std::to_string(s.outcome) + " on a " +
                                std::to_string(layout.dim(s.qudit)) +
                                "-level qudit");
        ok = false;
      }
    }
    if (ok) well_laid.insert(cls);
  }

  // Sibling completeness at every prefix length: replacing any step's
  // outcome by any other value of that qudit stays inside the collection.
  std::set<OutcomeClass> missing;
  for (const OutcomeClass& cls : well_laid) {
    for (std::size_t level = 0; level < cls.length(); ++level) {
      const ClassStep& s = cls.steps()[level];
      for (int v = 0; v < layout.dim(s.qudit); ++v) {
        OutcomeClass sibling = cls.prefix(level).extended(s.qudit, v);
        if (!collection.classes.count(sibling)) missing.insert(sibling);
      }
    }
  }
  for (const OutcomeClass& cls : missing)
    report.add("sibling-completeness",
               "class '" + cls.key() + "' is required but absent");

  // All children of one class must continue on a single qudit.
  for (const auto& [parent, kids] : class_children(collection)) {
    std::set<int> qudits;
    for (const OutcomeClass& child : kids) qudits.insert(child.last_step().qudit);
    if (qudits.size() > 1) {
      std::string list;
      for (int j : qudits) list += (list.empty() ? "" : ", ") + std::to_string(j);
      report.add("branch-qudit", "children of '" + parent.key() +
                                     "' act on several qudits: " + list);
    }
  }
  return report;
}

ValidationReport validate_form(const QuantumGameForm& form) {
  ValidationReport report;
  if (form.num_players < 1) {
    report.add("players", "a game needs at least one player");
    return report;
  }
  const QuditLayout& layout = form.initial_state.layout();
  if (layout.num_qudits() < form.num_players)
    report.add("register", "only " + std::to_string(layout.num_qudits()) +
                               " qudits for " +
                               std::to_string(form.num_players) + " players");

  ValidationReport classes = validate_classes(form.classes, layout);
  for (const Violation& v : classes.violations)
    report.violations.push_back(v);

  if (form.operator_sets.size() !=
      static_cast<std::size_t>(layout.num_qudits())) {
    report.add("operators", "expected one operator menu per qudit, got " +
                                std::to_string(form.operator_sets.size()));
    return report;
  }
  for (int j = 1; j <= layout.num_qudits(); ++j) {
    const auto& menu = form.operator_sets[static_cast<std::size_t>(j - 1)];
    const int d = layout.dim(j);
    std::set<std::string> names;
    for (const NamedOperator& named : menu) {
      if (named.name.empty() ||
          named.name.find_first_of(",:/") != std::string::npos)
        report.add("operators", "qudit " + std::to_string(j) +
                                    " has an operator with an empty name or "
                                    "one containing ',', ':' or '/'");
      if (!names.insert(named.name).second)
        report.add("operators", "qudit " + std::to_string(j) +
                                    " repeats operator name '" + named.name +
                                    "'");
      if (named.op.dim() != d)
        report.add("operators", "operator '" + named.name + "' on qudit " +
                                    std::to_string(j) +
                                    " has the wrong dimension");
    }
    for (int t = 0; t < d; ++t) {
      bool found = false;
      for (const NamedOperator& named : menu)
        if (named.op.dim() == d && is_basis_shift(named.op, t)) {
          found = true;
          break;
        }
      if (!found)
        report.add("operators", "qudit " + std::to_string(j) +
                                    " lacks a shift-by-" + std::to_string(t) +
                                    " operator");
    }
  }

  auto children = class_children(form.classes);
  for (const auto& [cls, kids] : children) {
    if (kids.empty()) continue;
    auto it = form.player_fn.find(cls);
    if (it == form.player_fn.end())
      report.add("mover", "nonterminal class '" + cls.key() + "' has no mover");
    else if (it->second < 1 || it->second > form.num_players)
      report.add("mover", "class '" + cls.key() + "' names player " +
                              std::to_string(it->second));
  }
  for (const auto& [cls, p] : form.player_fn) {
    auto it = children.find(cls);
    if (it == children.end() || it->second.empty())
      report.add("mover", "terminal or unknown class '" + cls.key() +
                              "' appears in the mover function");
  }
  return report;
}

ValidationReport validate_game(const QuantumExtensiveGame& game) {
  ValidationReport report = validate_form(game.form);
  if (!report.ok()) return report;
  std::set<OutcomeClass> terminals;
  for (const OutcomeClass& cls : terminal_classes(game.form))
    terminals.insert(cls);
  for (const OutcomeClass& cls : terminals) {
    auto it = game.payoffs.find(cls);
    if (it == game.payoffs.end())
      report.add("payoffs", "terminal class '" + cls.key() + "' has no payoff");
    else if (it->second.size() !=
             static_cast<std::size_t>(game.form.num_players))
      report.add("payoffs", "terminal class '" + cls.key() + "' has " +
                                std::to_string(it->second.size()) +
                                " payoff entries");
  }
  for (const auto& [cls, u] : game.payoffs)
    if (!terminals.count(cls))
      report.add("payoffs",
                 "payoff attached to non-terminal class '" + cls.key() + "'");
  return report;
}

std::vector<OutcomeClass> terminal_classes(const QuantumGameForm& form) {
  std::vector<OutcomeClass> terminals;
  for (const auto& [cls, kids] : class_children(form.classes))
    if (kids.empty()) terminals.push_back(cls);
  return terminals;
}

int next_qudit(const QuantumGameForm& form, const OutcomeClass& cls) {
  if (!form.classes.classes.count(cls))
    fail(ErrorCode::kUnknownClass,
         "class '" + cls.key() + "' is not in the game");
  // Extensions of `cls` sort directly after it; any extension's step at the
  // class's depth names the continuation qudit (unique for valid forms).
  auto it = form.classes.classes.upper_bound(cls);
  if (it == form.classes.classes.end() || !cls.is_prefix_of(*it))
    fail(ErrorCode::kTerminalClass,
         "class '" + cls.key() + "' has no continuation");
  return it->steps()[cls.length()].qudit;
}

std::vector<QInformationSet> information_sets(const QuantumGameForm& form) {
  std::map<std::pair<int, int>, std::vector<OutcomeClass>> groups;
  for (const auto& [cls, kids] : class_children(form.classes)) {
    if (kids.empty()) continue;
    groups[{form.player_fn.at(cls), kids.front().last_step().qudit}].push_back(
        cls);
  }
  std::vector<QInformationSet> sets;
  for (auto& [key, members] : groups)
    sets.push_back(QInformationSet{key.first, key.second, std::move(members)});
  return sets;
}

std::vector<int> class_projector_diagonal(const QuditLayout& layout,
                                          const OutcomeClass& cls) {
  for (const ClassStep& s : cls.steps())
    if (s.outcome >= layout.dim(s.qudit))
      fail(ErrorCode::kDimensionMismatch,
           "outcome " + std::to_string(s.outcome) + " exceeds qudit " +
               std::to_string(s.qudit) + "'s dimension");
  std::vector<int> diag(layout.total_dimension(), 1);
  for (std::size_t index = 0; index < diag.size(); ++index)
    for (const ClassStep& s : cls.steps())
      if (layout.digit(index, s.qudit) != s.outcome) {
        diag[index] = 0;
        break;
      }
  return diag;
}

PayoffOperator payoff_operator(const QuantumExtensiveGame& game) {
  const QuditLayout& layout = game.form.initial_state.layout();
  PayoffOperator op;
  op.player_diagonals.assign(
      static_cast<std::size_t>(game.form.num_players),
      std::vector<double>(layout.total_dimension(), 0.0));
  for (const OutcomeClass& cls : terminal_classes(game.form)) {
    const std::vector<int> proj = class_projector_diagonal(layout, cls);
    const PayoffVector& delta = game.payoffs.at(cls);
    for (std::size_t index = 0; index < proj.size(); ++index) {
      if (proj[index] == 0) continue;
      for (std::size_t p = 0; p < op.player_diagonals.size(); ++p)
        op.player_diagonals[p][index] += delta[p];
    }
  }
  return op;
}

bool check_projector_orthogonality(const QuantumExtensiveGame& game) {
  const QuditLayout& layout = game.form.initial_state.layout();
  // Pairwise zero products and completeness together say: every basis state
  // is selected by exactly one terminal-class projector.
  std::vector<int> cover(layout.total_dimension(), 0);
  for (const OutcomeClass& cls : terminal_classes(game.form)) {
    const std::vector<int> proj = class_projector_diagonal(layout, cls);
    for (std::size_t index = 0; index < cover.size(); ++index)
      cover[index] += proj[index];
  }
  return std::all_of(cover.begin(), cover.end(),
                     [](int c) { return c == 1; });
}

namespace {

void require_terminal(const QuantumExtensiveGame& game,
                      const OutcomeClass& cls) {
  if (!game.form.classes.classes.count(cls))
    fail(ErrorCode::kUnknownClass,
         "class '" + cls.key() + "' is not in the game");
  auto it = game.form.classes.classes.upper_bound(cls);
  if (it != game.form.classes.classes.end() && cls.is_prefix_of(*it))
    fail(ErrorCode::kNotTerminal,
         "class '" + cls.key() + "' has continuations");
}

}  // namespace

RunResult class_representative_run(const QuantumExtensiveGame& game,
                                   const OutcomeClass& cls) {
  require_terminal(game, cls);
  const QuditLayout& layout = game.form.initial_state.layout();
  RunResult run;
  run.probability = 1.0;
  run.state = game.form.initial_state;
  for (const ClassStep& s : cls.steps()) {
    const int d = layout.dim(s.qudit);
    bool realized = false;
    // The outcome's probabilities under all d shifts sum to 1, so some
    // shift always clears the pruning threshold.
    for (int t = 0; t < d && !realized; ++t) {
      StateVector shifted =
          apply_on_qudit(run.state, s.qudit, basis_shift_operator(d, t));
      for (const MeasurementOutcome& m : measure_qudit(shifted, s.qudit)) {
        if (m.outcome != s.outcome) continue;
        run.state = m.state;
        run.probability *= m.probability;
        run.moves.push_back(
            MoveRecord{s.qudit, "V" + std::to_string(t), s.outcome});
        realized = true;
        break;
      }
    }
    if (!realized)
      fail(ErrorCode::kNotARealization,
           "no shift operator realizes outcome " + std::to_string(s.outcome) +
               " on qudit " + std::to_string(s.qudit));
  }
  return run;
}

PayoffVector class_utility(const QuantumExtensiveGame& game,
                           const OutcomeClass& cls, bool verify_trace) {
  require_terminal(game, cls);
  auto it = game.payoffs.find(cls);
  if (it == game.payoffs.end())
    fail(ErrorCode::kUnknownClass,
         "terminal class '" + cls.key() + "' has no payoff entry");
  if (verify_trace) {
    const RunResult run = class_representative_run(game, cls);
    const PayoffOperator op = payoff_operator(game);
    for (std::size_t p = 0; p < it->second.size(); ++p) {
      double trace = 0.0;
      for (std::size_t index = 0; index < run.state.amplitudes().size();
           ++index)
        trace += op.player_diagonals[p][index] *
                 std::norm(run.state.amplitude(index));
      if (std::abs(trace - it->second[p]) > kEqTol)
        fail(ErrorCode::kNotARealization,
             "trace value " + std::to_string(trace) + " for player " +
                 std::to_string(p + 1) + " disagrees with the stored payoff");
    }
  }
  return it->second;
}

std::vector<QTerminalRun> play_profile(const QuantumExtensiveGame& game,
                                       const QStrategyProfile& profile) {
  const auto children = class_children(game.form.classes);
  std::vector<QTerminalRun> out;
  std::vector<MoveRecord> moves;

  std::function<void(const OutcomeClass&, const StateVector&, double)> walk =
      [&](const OutcomeClass& cls, const StateVector& state, double prob) {
        auto kids = children.find(cls);
        if (kids == children.end() || kids->second.empty()) {
          out.push_back(
              QTerminalRun{cls, prob, RunResult{moves, prob, state}});
          return;
        }
        const int player = game.form.player_fn.at(cls);
        const int qudit = kids->second.front().last_step().qudit;
        auto choice = profile.choices.find({player, qudit});
        if (choice == profile.choices.end())
          fail(ErrorCode::kIncompleteProfile,
               "no operator for player " + std::to_string(player) +
                   " on qudit " + std::to_string(qudit));
        StateVector applied =
            apply_on_qudit(state, qudit, choice->second.op);
        for (const MeasurementOutcome& m : measure_qudit(applied, qudit)) {
          moves.push_back(
              MoveRecord{qudit, choice->second.name, m.outcome});
          walk(cls.extended(qudit, m.outcome), m.state,
               prob * m.probability);
          moves.pop_back();
        }
      };
  walk(OutcomeClass::initial(), game.form.initial_state, 1.0);
  return out;
}

PayoffVector expected_utility(const QuantumExtensiveGame& game,
                              const QStrategyProfile& profile) {
  PayoffVector total(static_cast<std::size_t>(game.form.num_players), 0.0);
  for (const QTerminalRun& leaf : play_profile(game, profile)) {
    const PayoffVector& delta = game.payoffs.at(leaf.cls);
    for (std::size_t p = 0; p < total.size(); ++p)
      total[p] += leaf.probability * delta[p];
  }
  return total;
}

namespace {

ExtensiveGame build_representative(
    const QuantumExtensiveGame& game,
    const std::function<std::string(const OutcomeClass&)>& step_label) {
  ExtensiveGame out;
  out.form.num_players = game.form.num_players;

  std::map<OutcomeClass, History> history_of;
  // Ascending order visits every parent before its extensions.
  for (const OutcomeClass& cls : game.form.classes.classes) {
    if (cls.empty()) {
      history_of[cls] = History::root();
    } else {
      history_of[cls] = history_of.at(cls.parent()).extended(step_label(cls));
    }
    out.form.histories.insert(history_of[cls]);
  }

  for (const auto& [cls, player] : game.form.player_fn)
    out.form.player_fn[history_of.at(cls)] = player;

  out.form.info_partition.assign(
      static_cast<std::size_t>(game.form.num_players), {});
  for (const QInformationSet& set : information_sets(game.form)) {
    std::set<History> cell;
    for (const OutcomeClass& cls : set.members)
      cell.insert(history_of.at(cls));
    out.form.info_partition[static_cast<std::size_t>(set.player - 1)]
        .push_back(std::move(cell));
  }

  for (const auto& [cls, delta] : game.payoffs)
    out.utilities[history_of.at(cls)] = delta;
  return out;
}

}  // namespace

ExtensiveGame representative_game(const QuantumExtensiveGame& game) {
  return build_representative(game, [](const OutcomeClass& cls) {
    const ClassStep& s = cls.last_step();
    return std::to_string(s.outcome) + "@" + std::to_string(s.qudit);
  });
}

ExtensiveGame representative_game_sampled(const QuantumExtensiveGame& game,
                                          std::mt19937& rng) {
  return build_representative(game, [&](const OutcomeClass& cls) {
    const ClassStep& s = cls.last_step();
    const auto& menu =
        game.form.operator_sets[static_cast<std::size_t>(s.qudit - 1)];
    std::uniform_int_distribution<std::size_t> pick(0, menu.size() - 1);
    return std::to_string(s.outcome) + "@" + std::to_string(s.qudit) + ":" +
           menu[pick(rng)].name;
  });
}

std::optional<HistoryMap> check_realization(const QuantumExtensiveGame& qgame,
                                            const ExtensiveGame& cgame) {
  for (const auto& [h, player] : cgame.form.player_fn)
    if (player == kChance)
      fail(ErrorCode::kChanceNotSupported,
           "the classical game has a chance node at '" + h.key() + "'");
  return search_isomorphism(cgame, representative_game(qgame));
}

}  // namespace qeg
