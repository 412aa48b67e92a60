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

#include "qeg/equilibrium.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "qeg/errors.hpp"
#include "qeg/extensive_game.hpp"

namespace qeg {
namespace {

// Runs fn(0..count-1) on a small thread pool. Every index writes its own
// output slot, so results are identical to the serial loop regardless of
// scheduling. The first exception is captured and rethrown after join.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  std::size_t workers = std::thread::hardware_concurrency();
  workers = std::min(std::max<std::size_t>(workers, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

void check_profile_shape(const ProfileTable& table,
                         const std::vector<int>& profile) {
  if (profile.size() != table.strategies.size())
    fail(ErrorCode::kParamOutOfRange, "profile has " + std::to_string(profile.size()) +
                               " entries for " +
                               std::to_string(table.strategies.size()) +
                               " players");
  for (std::size_t p = 0; p < profile.size(); ++p) {
    if (profile[p] < 0 ||
        static_cast<std::size_t>(profile[p]) >= table.strategies[p].size())
      fail(ErrorCode::kParamOutOfRange,
           "strategy index " + std::to_string(profile[p]) +
               " out of range for player " + std::to_string(p + 1));
  }
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

}  // namespace

std::size_t ProfileTable::flat_index(const std::vector<int>& profile) const {
  check_profile_shape(*this, profile);
  std::size_t flat = 0;
  for (std::size_t p = 0; p < profile.size(); ++p)
    flat = flat * strategies[p].size() + static_cast<std::size_t>(profile[p]);
  return flat;
}

std::vector<int> ProfileTable::profile_at(std::size_t flat) const {
  std::vector<int> profile(strategies.size(), 0);
  for (std::size_t p = strategies.size(); p-- > 0;) {
    std::size_t count = strategies[p].size();
    profile[p] = static_cast<int>(flat % count);
    flat /= count;
  }
  return profile;
}

QStrategyProfile ProfileTable::assemble(const std::vector<int>& profile) const {
  check_profile_shape(*this, profile);
  QStrategyProfile merged;
  for (std::size_t p = 0; p < profile.size(); ++p) {
    const QStrategyProfile& part =
        strategies[p][static_cast<std::size_t>(profile[p])];
    for (const auto& [key, op] : part.choices) merged.choices[key] = op;
  }
  return merged;
}

std::string ProfileTable::profile_label(const std::vector<int>& profile) const {
  check_profile_shape(*this, profile);
  std::string label;
  for (std::size_t p = 0; p < profile.size(); ++p) {
    if (p > 0) label += ';';
    label += strategy_labels[p][static_cast<std::size_t>(profile[p])];
  }
  return label;
}

ProfileTable build_profile_table(const QuantumExtensiveGame& game,
                                 std::size_t max_profiles) {
  const QuantumGameForm& form = game.form;
  std::vector<QInformationSet> sets = information_sets(form);

  ProfileTable table;
  table.strategy_labels.resize(static_cast<std::size_t>(form.num_players));
  table.strategies.resize(static_cast<std::size_t>(form.num_players));

  for (int player = 1; player <= form.num_players; ++player) {
    std::vector<const QInformationSet*> own;
    for (const QInformationSet& set : sets)
      if (set.player == player) own.push_back(&set);

    std::vector<QStrategyProfile>& strategies =
        table.strategies[static_cast<std::size_t>(player - 1)];
    std::vector<std::string>& labels =
        table.strategy_labels[static_cast<std::size_t>(player - 1)];
    if (own.empty()) {
      strategies.emplace_back();
      labels.emplace_back("-");
      continue;
    }

    // Odometer over this player's information sets; the choice at the last
    // set varies fastest.
    std::vector<std::size_t> menu_sizes;
    for (const QInformationSet* set : own) {
      const auto& menu =
          form.operator_sets[static_cast<std::size_t>(set->qudit - 1)];
      menu_sizes.push_back(menu.size());
    }
    std::vector<std::size_t> pick(own.size(), 0);
    bool done = false;
    while (!done) {
      QStrategyProfile strategy;
      std::string label;
      for (std::size_t s = 0; s < own.size(); ++s) {
        const auto& menu =
            form.operator_sets[static_cast<std::size_t>(own[s]->qudit - 1)];
        const NamedOperator& op = menu[pick[s]];
        strategy.choices[{player, own[s]->qudit}] = op;
        if (s > 0) label += '/';
        label += op.name;
      }
      strategies.push_back(std::move(strategy));
      labels.push_back(std::move(label));

      std::size_t s = own.size();
      for (;;) {
        if (s == 0) {
          done = true;
          break;
        }
        --s;
        if (++pick[s] < menu_sizes[s]) break;
        pick[s] = 0;
      }
    }
  }

  std::size_t total = 1;
  for (const auto& strategies : table.strategies) {
    if (strategies.empty() || total > max_profiles / strategies.size())
      fail(ErrorCode::kExplosionGuard, "profile table exceeds " +
                                std::to_string(max_profiles) + " profiles");
    total *= strategies.size();
  }

  table.payoffs.resize(total);
  parallel_for(total, [&](std::size_t flat) {
    table.payoffs[flat] =
        expected_utility(game, table.assemble(table.profile_at(flat)));
  });
  return table;
}

std::vector<std::vector<int>> pure_nash_quantum(const ProfileTable& table) {
  std::size_t players = table.strategies.size();
  std::vector<std::size_t> stride(players, 1);
  for (std::size_t p = players; p-- > 1;)
    stride[p - 1] = stride[p] * table.strategies[p].size();

  std::vector<std::vector<int>> equilibria;
  for (std::size_t flat = 0; flat < table.payoffs.size(); ++flat) {
    std::vector<int> profile = table.profile_at(flat);
    bool stable = true;
    for (std::size_t p = 0; p < players && stable; ++p) {
      std::size_t base =
          flat - static_cast<std::size_t>(profile[p]) * stride[p];
      double incumbent = table.payoffs[flat][p];
      for (std::size_t alt = 0; alt < table.strategies[p].size(); ++alt) {
        if (alt == static_cast<std::size_t>(profile[p])) continue;
        if (table.payoffs[base + alt * stride[p]][p] >
            incumbent + kNashTieTol) {
          stable = false;
          break;
        }
      }
    }
    if (stable) equilibria.push_back(std::move(profile));
  }
  return equilibria;
}

std::vector<std::vector<double>> deviation_gaps(const ProfileTable& table,
                                                const std::vector<int>& profile) {
  std::size_t flat = table.flat_index(profile);
  std::size_t players = table.strategies.size();
  std::vector<std::size_t> stride(players, 1);
  for (std::size_t p = players; p-- > 1;)
    stride[p - 1] = stride[p] * table.strategies[p].size();

  std::vector<std::vector<double>> gaps(players);
  for (std::size_t p = 0; p < players; ++p) {
    std::size_t base = flat - static_cast<std::size_t>(profile[p]) * stride[p];
    for (std::size_t alt = 0; alt < table.strategies[p].size(); ++alt) {
      if (alt == static_cast<std::size_t>(profile[p])) continue;
      gaps[p].push_back(table.payoffs[flat][p] -
                        table.payoffs[base + alt * stride[p]][p]);
    }
  }
  return gaps;
}

std::vector<double> open_interval_grid(double lo, double hi, int count) {
  if (count < 1) fail(ErrorCode::kParamOutOfRange, "grid needs at least one point");
  if (!(hi > lo)) fail(ErrorCode::kParamOutOfRange, "grid interval is empty");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  for (int k = 1; k <= count; ++k)
    grid.push_back(lo + static_cast<double>(k) * (hi - lo) /
                            static_cast<double>(count + 1));
  return grid;
}

std::vector<SweepRow> sweep_gamma(
    const std::function<QuantumExtensiveGame(double)>& make_game,
    const std::vector<double>& gammas) {
  std::vector<SweepRow> rows(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    SweepRow& row = rows[i];
    row.gamma = gammas[i];
    QuantumExtensiveGame game = make_game(gammas[i]);
    ProfileTable table = build_profile_table(game);
    for (const std::vector<int>& eq : pure_nash_quantum(table)) {
      row.equilibrium_labels.push_back(table.profile_label(eq));
      row.payoffs.push_back(table.payoffs[table.flat_index(eq)]);
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, int num_players,
                     std::ostream& out) {
  out << "gamma,equilibrium_label";
  for (int p = 1; p <= num_players; ++p) out << ",u_" << p;
  out << '\n';
  for (const SweepRow& row : rows) {
    out << format_double(row.gamma) << ',';
    for (std::size_t e = 0; e < row.equilibrium_labels.size(); ++e) {
      if (e > 0) out << '|';
      out << row.equilibrium_labels[e];
    }
    for (int p = 0; p < num_players; ++p) {
      out << ',';
      for (std::size_t e = 0; e < row.payoffs.size(); ++e) {
        if (e > 0) out << '|';
        out << format_double(row.payoffs[e][static_cast<std::size_t>(p)]);
      }
    }
    out << '\n';
  }
}

ClassicalComparison classical_comparison(const QuantumExtensiveGame& qgame,
                                         const ExtensiveGame& cgame) {
  if (!check_realization(qgame, cgame))
    fail(ErrorCode::kNotARealization,
         "the classical game is not realized by the quantum game");

  ClassicalComparison report;
  StrategicForm sf = strategic_form(cgame);
  report.classical_equilibria = pure_nash(sf);
  for (const std::vector<int>& eq : report.classical_equilibria)
    report.classical_payoffs.push_back(sf.payoffs[sf.flat_index(eq)]);
  if (!report.classical_payoffs.empty()) {
    report.classical_guarantee = report.classical_payoffs.front();
    for (const PayoffVector& u : report.classical_payoffs)
      for (std::size_t p = 0; p < u.size(); ++p)
        report.classical_guarantee[p] = std::min(report.classical_guarantee[p], u[p]);
  }

  ProfileTable table = build_profile_table(qgame);
  report.quantum_equilibria = pure_nash_quantum(table);
  for (const std::vector<int>& eq : report.quantum_equilibria)
    report.quantum_payoffs.push_back(table.payoffs[table.flat_index(eq)]);

  for (std::size_t q = 0; q < report.quantum_payoffs.size(); ++q) {
    const PayoffVector& quantum = report.quantum_payoffs[q];
    bool beats_guarantee = !report.classical_guarantee.empty();
    for (std::size_t p = 0; p < report.classical_guarantee.size(); ++p)
      if (quantum[p] <= report.classical_guarantee[p]) beats_guarantee = false;
    report.dominates_guarantee.push_back(beats_guarantee);
    for (std::size_t c = 0; c < report.classical_payoffs.size(); ++c) {
      const PayoffVector& classical = report.classical_payoffs[c];
      bool improves = true;
      for (std::size_t p = 0; p < classical.size(); ++p)
        if (quantum[p] <= classical[p]) improves = false;
      if (improves)
        report.pareto_improvements.emplace_back(static_cast<int>(q),
                                                static_cast<int>(c));
    }
  }
  return report;
}

}  // namespace qeg
