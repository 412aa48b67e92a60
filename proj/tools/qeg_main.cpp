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

#include <clocale>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qeg/eisert.hpp"
#include "qeg/equilibrium.hpp"
#include "qeg/errors.hpp"
#include "qeg/extensive_game.hpp"
#include "qeg/gamedef.hpp"
#include "qeg/quantum_game.hpp"

namespace {

using qeg::Error;
using qeg::ErrorCode;
using qeg::GameDocument;
using qeg::fail;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string join_payoff(const qeg::PayoffVector& u) {
  std::string out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) out += ',';
    out += fmt(u[i]);
  }
  return out;
}

// Applies --gamma/--gamma-deg to a loaded document. Overrides only make
// sense for quantum games prepared in the one-parameter entangled family.
GameDocument load_document(const std::string& path,
                           std::optional<double> gamma) {
  GameDocument doc = qeg::load_game_file(path);
  if (gamma.has_value()) {
    if (doc.kind != "quantum")
      fail(ErrorCode::kParamOutOfRange,
           "--gamma applies only to quantum game files");
    if (!doc.quantum.ghz_gamma.has_value())
      fail(ErrorCode::kParamOutOfRange,
           "--gamma requires a ghz_like initial state");
    doc.quantum.ghz_gamma = *gamma;
  }
  return doc;
}

int cmd_validate(const std::string& path) {
  GameDocument doc = load_document(path, std::nullopt);
  qeg::ValidationReport report;
  if (doc.kind == "quantum")
    report = qeg::validate_game(qeg::to_quantum_game(doc));
  else
    report = qeg::validate_game(qeg::to_classical_game(doc));
  if (report.ok()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& v : report.violations)
    std::cout << v.category << ": " << v.detail << "\n";
  return 1;
}

qeg::QuantumExtensiveGame quantum_game_or_fail(const GameDocument& doc,
                                               const char* verb) {
  if (doc.kind != "quantum")
    fail(ErrorCode::kParamOutOfRange,
         std::string(verb) + " requires a quantum game file");
  return qeg::to_quantum_game(doc);
}

int cmd_simulate(const std::string& path, const std::string& profile_spec,
                 std::optional<double> gamma, std::optional<uint64_t> seed) {
  qeg::QuantumExtensiveGame game =
      quantum_game_or_fail(load_document(path, gamma), "simulate");
  qeg::QStrategyProfile profile = qeg::parse_profile_spec(profile_spec, game);
  std::vector<qeg::QTerminalRun> runs = qeg::play_profile(game, profile);
  if (!seed.has_value()) {
    for (const auto& run : runs)
      std::cout << run.cls.key() << " " << fmt(run.probability) << "\n";
    return 0;
  }
  std::mt19937_64 rng(*seed);
  double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
  double cum = 0.0;
  const qeg::QTerminalRun* picked = &runs.back();
  for (const auto& run : runs) {
    cum += run.probability;
    if (u < cum) {
      picked = &run;
      break;
    }
  }
  std::cout << picked->cls.key() << " " << fmt(picked->probability) << "\n";
  return 0;
}

int cmd_payoff(const std::string& path, const std::string& profile_spec,
               std::optional<double> gamma) {
  qeg::QuantumExtensiveGame game =
      quantum_game_or_fail(load_document(path, gamma), "payoff");
  qeg::QStrategyProfile profile = qeg::parse_profile_spec(profile_spec, game);
  std::cout << join_payoff(qeg::expected_utility(game, profile)) << "\n";
  return 0;
}

int cmd_nash(const std::string& path, std::optional<double> gamma) {
  GameDocument doc = load_document(path, gamma);
  if (doc.kind == "quantum") {
    qeg::ProfileTable table =
        qeg::build_profile_table(qeg::to_quantum_game(doc));
    for (const auto& profile : qeg::pure_nash_quantum(table)) {
      const qeg::PayoffVector& u = table.payoffs[table.flat_index(profile)];
      std::cout << table.profile_label(profile) << "," << join_payoff(u)
                << "\n";
    }
    return 0;
  }
  qeg::StrategicForm sf =
      qeg::strategic_form(qeg::to_classical_game(doc));
  for (const auto& profile : qeg::pure_nash(sf)) {
    std::string label;
    for (std::size_t p = 0; p < profile.size(); ++p) {
      if (p) label += ';';
      label += sf.strategy_labels[p][static_cast<std::size_t>(profile[p])];
    }
    std::cout << label << ","
              << join_payoff(sf.payoffs[sf.flat_index(profile)]) << "\n";
  }
  return 0;
}

std::vector<double> parse_gamma_grid(const std::string& spec) {
  auto first = spec.find(':');
  auto second = spec.find(':', first == std::string::npos ? 0 : first + 1);
  if (first == std::string::npos || second == std::string::npos)
    fail(ErrorCode::kParamOutOfRange, "expected --gamma-grid LO:HI:N");
  double lo = 0.0, hi = 0.0;
  int count = 0;
  try {
    lo = std::stod(spec.substr(0, first));
    hi = std::stod(spec.substr(first + 1, second - first - 1));
    count = std::stoi(spec.substr(second + 1));
  } catch (const std::exception&) {
    fail(ErrorCode::kParamOutOfRange, "expected --gamma-grid LO:HI:N");
  }
  return qeg::open_interval_grid(lo, hi, count);
}

int cmd_sweep(const std::string& path, const std::string& grid_spec,
              const std::string& out_path) {
  GameDocument doc = load_document(path, std::nullopt);
  if (doc.kind != "quantum" || !doc.quantum.ghz_gamma.has_value())
    fail(ErrorCode::kParamOutOfRange,
         "sweep requires a quantum game file with a ghz_like initial state");
  std::vector<double> gammas = parse_gamma_grid(grid_spec);
  auto family = [&doc](double gamma) {
    GameDocument at = doc;
    at.quantum.ghz_gamma = gamma;
    return qeg::to_quantum_game(at);
  };
  std::vector<qeg::SweepRow> rows = qeg::sweep_gamma(family, gammas);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot write \"" + out_path + "\"");
  qeg::write_sweep_csv(rows, qeg::to_quantum_game(doc).form.num_players, out);
  if (!out.flush())
    fail(ErrorCode::kIoError, "cannot write \"" + out_path + "\"");
  return 0;
}

int cmd_check_realization(const std::string& qpath, const std::string& cpath) {
  qeg::QuantumExtensiveGame qgame =
      quantum_game_or_fail(load_document(qpath, std::nullopt), "the first file");
  GameDocument cdoc = load_document(cpath, std::nullopt);
  if (cdoc.kind != "classical")
    fail(ErrorCode::kParamOutOfRange,
         "the second file must be a classical game file");
  qeg::ExtensiveGame cgame = qeg::to_classical_game(cdoc);
  std::optional<qeg::HistoryMap> witness =
      qeg::check_realization(qgame, cgame);
  if (witness.has_value()) {
    std::cout << "realization: " << witness->size() << " histories\n";
    for (const auto& [from, to] : *witness)
      std::cout << "\"" << from.key() << "\" -> \"" << to.key() << "\"\n";
    return 0;
  }
  // Negative answer: report the first structural mismatch as a hint.
  qeg::ExtensiveGame rep = qeg::representative_game(qgame);
  std::string hint = "trees are not label-isomorphic";
  if (rep.form.num_players != cgame.form.num_players)
    hint = "player counts differ (" + std::to_string(rep.form.num_players) +
           " vs " + std::to_string(cgame.form.num_players) + ")";
  else if (rep.form.histories.size() != cgame.form.histories.size())
    hint = "history counts differ (" +
           std::to_string(rep.form.histories.size()) + " vs " +
           std::to_string(cgame.form.histories.size()) + ")";
  std::cout << "not a realization: " << hint << "\n";
  return 1;
}

int cmd_eisert(double gamma, double theta1, double phi1, double theta2,
               double phi2, const std::string& payoffs_path) {
  std::ifstream in(payoffs_path, std::ios::binary);
  if (!in)
    fail(ErrorCode::kIoError, "cannot read \"" + payoffs_path + "\"");
  nlohmann::json table;
  try {
    table = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kSyntaxError, e.what());
  }
  if (!table.is_array() || table.size() != 4)
    fail(ErrorCode::kSchemaError,
         "payoff table must be an array of 4 payoff rows (outcomes 00, 01, "
         "10, 11)");
  std::array<qeg::PayoffVector, 4> rows{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (!table[i].is_array() || table[i].empty())
      fail(ErrorCode::kSchemaError, "payoff rows are non-empty number lists");
    for (const auto& v : table[i]) {
      if (!v.is_number())
        fail(ErrorCode::kSchemaError, "payoff rows are non-empty number lists");
      rows[i].push_back(v.get<double>());
    }
  }
  qeg::EisertParams params =
      qeg::EisertParams::make(gamma, theta1, phi1, theta2, phi2, rows);
  std::array<qeg::Complex, 4> chi = qeg::chi_coefficients(params);
  std::cout << "chi2";
  for (const auto& c : chi) std::cout << "," << fmt(std::norm(c));
  std::cout << "\npayoff," << join_payoff(qeg::eisert_payoff(params)) << "\n";
  return 0;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Simulator and analysis toolkit for quantum extensive games"};
  app.require_subcommand(1);

  std::string file, cfile, profile_spec, grid_spec, out_path, payoffs_path;
  double gamma = 0.0, gamma_deg = 0.0;
  double theta1 = 0.0, phi1 = 0.0, theta2 = 0.0, phi2 = 0.0;
  uint64_t seed = 0;

  auto add_gamma = [&](CLI::App* cmd) {
    CLI::Option* g = cmd->add_option(
        "--gamma", gamma, "entanglement angle in radians");
    CLI::Option* gd = cmd->add_option(
        "--gamma-deg", gamma_deg, "entanglement angle in degrees");
    g->excludes(gd);
    gd->excludes(g);
  };
  auto gamma_override = [&](CLI::App* cmd) -> std::optional<double> {
    if (cmd->count("--gamma")) return gamma;
    if (cmd->count("--gamma-deg")) return gamma_deg * M_PI / 180.0;
    return std::nullopt;
  };

  CLI::App* validate = app.add_subcommand(
      "validate", "check a game file against all structural invariants");
  validate->add_option("file", file, "game file")->required();

  CLI::App* simulate = app.add_subcommand(
      "simulate",
      "list terminal classes with probabilities, or sample one run");
  simulate->add_option("file", file, "quantum game file")->required();
  simulate->add_option("--profile", profile_spec, "strategy profile spec")
      ->required();
  add_gamma(simulate);
  CLI::Option* seed_opt =
      simulate->add_option("--seed", seed, "sample one run with this seed");

  CLI::App* payoff = app.add_subcommand(
      "payoff", "expected payoff vector of a strategy profile");
  payoff->add_option("file", file, "quantum game file")->required();
  payoff->add_option("--profile", profile_spec, "strategy profile spec")
      ->required();
  add_gamma(payoff);

  CLI::App* nash = app.add_subcommand(
      "nash", "enumerate pure-strategy equilibria with their payoffs");
  nash->add_option("file", file, "game file")->required();
  add_gamma(nash);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "equilibria across an entanglement-angle grid, as CSV");
  sweep->add_option("file", file, "quantum game file")->required();
  sweep->add_option("--gamma-grid", grid_spec,
                    "LO:HI:N (N interior points of (LO, HI))")
      ->required();
  sweep->add_option("--out", out_path, "CSV output path")->required();

  CLI::App* check = app.add_subcommand(
      "check-realization",
      "test whether a quantum game realizes a classical game");
  check->add_option("qfile", file, "quantum game file")->required();
  check->add_option("cfile", cfile, "classical game file")->required();

  CLI::App* eisert = app.add_subcommand(
      "eisert", "closed-form two-player scheme: outcome weights and payoff");
  add_gamma(eisert);
  eisert->add_option("--theta1", theta1, "player 1 rotation angle");
  eisert->add_option("--phi1", phi1, "player 1 phase angle");
  eisert->add_option("--theta2", theta2, "player 2 rotation angle");
  eisert->add_option("--phi2", phi2, "player 2 phase angle");
  eisert->add_option("--payoffs", payoffs_path,
                     "JSON file: 4 payoff rows for outcomes 00, 01, 10, 11")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  }

  if (validate->parsed()) return cmd_validate(file);
  if (simulate->parsed()) {
    std::optional<uint64_t> s;
    if (seed_opt->count()) s = seed;
    return cmd_simulate(file, profile_spec, gamma_override(simulate), s);
  }
  if (payoff->parsed())
    return cmd_payoff(file, profile_spec, gamma_override(payoff));
  if (nash->parsed()) return cmd_nash(file, gamma_override(nash));
  if (sweep->parsed()) return cmd_sweep(file, grid_spec, out_path);
  if (check->parsed()) return cmd_check_realization(file, cfile);
  if (eisert->parsed()) {
    std::optional<double> g = gamma_override(eisert);
    if (!g.has_value())
      fail(ErrorCode::kParamOutOfRange,
           "eisert requires --gamma or --gamma-deg");
    return cmd_eisert(*g, theta1, phi1, theta2, phi2, payoffs_path);
  }
  return 0;
}

// One structured record per failure so callers can parse the diagnostic
// stream: {"error": code, "message": text[, "line": L, "column": C]}.
void emit_error(const std::string& code, std::string message, int line,
                int column) {
  const std::string prefix = code + ": ";
  if (message.rfind(prefix, 0) == 0) message = message.substr(prefix.size());
  nlohmann::json record;
  record["error"] = code;
  record["message"] = message;
  if (line > 0) {
    record["line"] = line;
    record["column"] = column;
  }
  std::cerr << record.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_NUMERIC, "C");
  try {
    return run_cli(argc, argv);
  } catch (const CLI::ParseError& e) {
    emit_error("UsageError", e.what(), 0, 0);
    return 1;
  } catch (const Error& e) {
    emit_error(qeg::error_code_name(e.code()), e.what(), e.line(), e.column());
    return 1;
  } catch (const std::exception& e) {
    emit_error("Internal", e.what(), 0, 0);
    return 1;
  }
}
