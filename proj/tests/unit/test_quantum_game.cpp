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

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qeg/eisert.hpp"
#include "support/checks.hpp"
#include "support/density_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/random_gen.hpp"

using fixtures::cls;
using fixtures::named_shift;
using fixtures::qprofile;
using fixtures::shift_menu;
using qeg::Complex;
using qeg::ErrorCode;
using qeg::NamedOperator;
using qeg::OutcomeClass;
using qeg::PayoffVector;
using qeg::QStrategyProfile;
using qeg::QuantumExtensiveGame;
using qeg::QuditLayout;
using qeg::StateVector;
using qeg::Unitary;

namespace {

constexpr double kPi = std::numbers::pi;

bool has_violation(const qeg::ValidationReport& report,
                   const std::string& category) {
  for (const auto& v : report.violations)
    if (v.category == category) return true;
  return false;
}

// Expectation of a diagonal observable on a pure state.
double diag_expectation(const std::vector<double>& diag,
                        const StateVector& state) {
  double total = 0.0;
  for (std::size_t i = 0; i < diag.size(); ++i)
    total += diag[i] * std::norm(state.amplitude(i));
  return total;
}

double diag_expectation(const std::vector<int>& diag,
                        const StateVector& state) {
  return diag_expectation(std::vector<double>(diag.begin(), diag.end()),
                          state);
}

}  // namespace

TEST_CASE("outcome-class mechanics and key round-trips") {
  OutcomeClass c = cls("1@1,0@2,0@3");
  CHECK(c.length() == 3);
  CHECK(c.key() == "1@1,0@2,0@3");
  CHECK(c.parent() == cls("1@1,0@2"));
  CHECK(c.prefix(1) == cls("1@1"));
  CHECK(c.last_step() == qeg::ClassStep{3, 0});
  CHECK(cls("1@1").is_prefix_of(c));
  CHECK_FALSE(cls("0@1").is_prefix_of(c));
  CHECK(OutcomeClass::initial().key().empty());
  CHECK(OutcomeClass::from_key("") == OutcomeClass::initial());
  CHECK(cls("1@1").extended(2, 0) == cls("1@1,0@2"));

  CHECK_THROWS_CODE(OutcomeClass::initial().parent(), ErrorCode::kUnknownClass);
  CHECK_THROWS_CODE(cls("1@1").extended(1, 0), ErrorCode::kRepeatedQudit);
  CHECK_THROWS_CODE(OutcomeClass::from_key("x@1"), ErrorCode::kSyntaxError);
  CHECK_THROWS_CODE(OutcomeClass::from_key("1@"), ErrorCode::kSyntaxError);
  CHECK_THROWS_CODE(OutcomeClass::from_key("1@1@2"), ErrorCode::kSyntaxError);
  CHECK_THROWS_CODE(OutcomeClass::from_key("1"), ErrorCode::kSyntaxError);
  CHECK_THROWS_CODE(OutcomeClass::from_key("1@1,,0@2"),
                    ErrorCode::kSyntaxError);
  CHECK_THROWS_CODE(OutcomeClass::from_key("1@0"), ErrorCode::kParamOutOfRange);
  CHECK_THROWS_CODE(OutcomeClass::from_key("-1@1"),
                    ErrorCode::kParamOutOfRange);
}

TEST_CASE("class-collection validation") {
  QuditLayout pair({2, 2});
  QuantumExtensiveGame dilemma = fixtures::make_dilemma_qgame(0.5);

  SUBCASE("the worked collections pass") {
    CHECK(qeg::validate_classes(dilemma.form.classes, pair).ok());
    QuantumExtensiveGame horse = fixtures::make_horse_qgame(0.5);
    CHECK(qeg::validate_classes(horse.form.classes, QuditLayout({2, 2, 2}))
              .ok());
  }
  SUBCASE("a missing outcome sibling is flagged") {
    qeg::ClassCollection broken = dilemma.form.classes;
    broken.classes.erase(cls("0@1,1@2"));
    CHECK(has_violation(qeg::validate_classes(broken, pair),
                        "sibling-completeness"));
  }
  SUBCASE("outcome branches may continue on different qudits") {
    qeg::ClassCollection branching;
    for (const char* key :
         {"", "0@1", "1@1", "0@1,0@2", "0@1,1@2", "1@1,0@3", "1@1,1@3"})
      branching.classes.insert(cls(key));
    CHECK(qeg::validate_classes(branching, QuditLayout({2, 2, 2})).ok());

    // ... but children of one class must share a single qudit.
    branching.classes.insert(cls("0@1,0@3"));
    branching.classes.insert(cls("0@1,1@3"));
    CHECK(has_violation(
        qeg::validate_classes(branching, QuditLayout({2, 2, 2})),
        "branch-qudit"));
  }
  SUBCASE("steps must fit the register") {
    qeg::ClassCollection collection = dilemma.form.classes;
    CHECK(has_violation(qeg::validate_classes(collection, QuditLayout({2})),
                        "steps"));

    qeg::ClassCollection deep;
    deep.classes.insert(cls(""));
    deep.classes.insert(cls("0@1"));
    deep.classes.insert(cls("1@1"));
    deep.classes.insert(cls("2@1"));
    CHECK(has_violation(qeg::validate_classes(deep, pair), "steps"));
  }
  SUBCASE("the start class is required") {
    qeg::ClassCollection no_start = dilemma.form.classes;
    no_start.classes.erase(cls(""));
    CHECK(has_violation(qeg::validate_classes(no_start, pair), "start"));
  }
}

TEST_CASE("form and game validation") {
  SUBCASE("the worked games validate cleanly") {
    CHECK(qeg::validate_game(fixtures::make_dilemma_qgame(0.7)).ok());
    CHECK(qeg::validate_game(fixtures::make_horse_qgame(1.2)).ok());
    CHECK(qeg::validate_game(fixtures::make_dilemma_qgame(0.7, 1)).ok());
  }
  SUBCASE("menus must contain every shift, possibly up to phases") {
    QuantumExtensiveGame game = fixtures::make_dilemma_qgame(0.5);
    game.form.operator_sets[0] = {named_shift(2, 0)};
    CHECK(has_violation(qeg::validate_form(game.form), "operators"));

    // A flip with column phases still counts as the shift-by-1 member.
    qeg::CMat flip(2, 2);
    flip(0, 1) = Complex{1, 0};
    flip(1, 0) = Complex{-1, 0};
    game.form.operator_sets[0] = {named_shift(2, 0),
                                  NamedOperator{"F", Unitary(flip)}};
    CHECK(qeg::validate_form(game.form).ok());
  }
  SUBCASE("operator naming and dimensions") {
    QuantumExtensiveGame game = fixtures::make_dilemma_qgame(0.5);
    game.form.operator_sets[0].push_back(
        NamedOperator{"V0", qeg::basis_shift_operator(2, 0)});
    CHECK(has_violation(qeg::validate_form(game.form), "operators"));

    game = fixtures::make_dilemma_qgame(0.5);
    game.form.operator_sets[0].push_back(
        NamedOperator{"a,b", qeg::basis_shift_operator(2, 0)});
    CHECK(has_violation(qeg::validate_form(game.form), "operators"));

    game = fixtures::make_dilemma_qgame(0.5);
    game.form.operator_sets[0].push_back(
        NamedOperator{"big", qeg::basis_shift_operator(3, 0)});
    CHECK(has_violation(qeg::validate_form(game.form), "operators"));

    game = fixtures::make_dilemma_qgame(0.5);
    game.form.operator_sets.pop_back();
    CHECK(has_violation(qeg::validate_form(game.form), "operators"));
  }
  SUBCASE("mover coverage") {
    QuantumExtensiveGame game = fixtures::make_dilemma_qgame(0.5);
    game.form.player_fn.erase(cls("0@1"));
    CHECK(has_violation(qeg::validate_form(game.form), "mover"));

    game = fixtures::make_dilemma_qgame(0.5);
    game.form.player_fn[cls("0@1")] = 9;
    CHECK(has_violation(qeg::validate_form(game.form), "mover"));

    game = fixtures::make_dilemma_qgame(0.5);
    game.form.player_fn[cls("0@1,0@2")] = 1;
    CHECK(has_violation(qeg::validate_form(game.form), "mover"));
  }
  SUBCASE("player count versus register size") {
    QuantumExtensiveGame game = fixtures::make_dilemma_qgame(0.5);
    game.form.num_players = 3;
    CHECK(has_violation(qeg::validate_form(game.form), "register"));
  }
  SUBCASE("payoff coverage") {
    QuantumExtensiveGame game = fixtures::make_dilemma_qgame(0.5);
    game.payoffs.erase(cls("1@1,1@2"));
    CHECK(has_violation(qeg::validate_game(game), "payoffs"));

    game = fixtures::make_dilemma_qgame(0.5);
    game.payoffs[cls("1@1,1@2")] = {1, 1, 1};
    CHECK(has_violation(qeg::validate_game(game), "payoffs"));

    game = fixtures::make_dilemma_qgame(0.5);
    game.payoffs[cls("0@1")] = {0, 0};
    CHECK(has_violation(qeg::validate_game(game), "payoffs"));
  }
}

TEST_CASE("terminal classes and continuation qudits") {
  QuantumExtensiveGame dilemma = fixtures::make_dilemma_qgame(0.5);
  CHECK(qeg::terminal_classes(dilemma.form) ==
        std::vector<OutcomeClass>{cls("0@1,0@2"), cls("0@1,1@2"),
                                  cls("1@1,0@2"), cls("1@1,1@2")});

  QuantumExtensiveGame horse = fixtures::make_horse_qgame(0.5);
  CHECK(qeg::terminal_classes(horse.form) ==
        std::vector<OutcomeClass>{cls("0@1,0@3"), cls("0@1,1@3"),
                                  cls("1@1,0@2,0@3"), cls("1@1,0@2,1@3"),
                                  cls("1@1,1@2")});

  qeg::QuantumGameForm lone;
  lone.classes.classes.insert(OutcomeClass::initial());
  CHECK(qeg::terminal_classes(lone) ==
        std::vector<OutcomeClass>{OutcomeClass::initial()});

  CHECK(qeg::next_qudit(horse.form, cls("")) == 1);
  CHECK(qeg::next_qudit(horse.form, cls("1@1")) == 2);
  CHECK(qeg::next_qudit(horse.form, cls("0@1")) == 3);
  CHECK(qeg::next_qudit(horse.form, cls("1@1,0@2")) == 3);
  CHECK(qeg::next_qudit(dilemma.form, cls("0@1")) == 2);
  CHECK_THROWS_CODE(qeg::next_qudit(horse.form, cls("0@1,0@3")),
                    ErrorCode::kTerminalClass);
  CHECK_THROWS_CODE(qeg::next_qudit(horse.form, cls("0@2")),
                    ErrorCode::kUnknownClass);
}

TEST_CASE("information sets group classes by mover and qudit") {
  auto dilemma_sets =
      qeg::information_sets(fixtures::make_dilemma_qgame(0.5).form);
  REQUIRE(dilemma_sets.size() == 2);
  CHECK(dilemma_sets[0].player == 1);
  CHECK(dilemma_sets[0].qudit == 1);
  CHECK(dilemma_sets[0].members == std::vector<OutcomeClass>{cls("")});
  CHECK(dilemma_sets[1].player == 2);
  CHECK(dilemma_sets[1].qudit == 2);
  CHECK(dilemma_sets[1].members ==
        std::vector<OutcomeClass>{cls("0@1"), cls("1@1")});

  auto horse_sets = qeg::information_sets(fixtures::make_horse_qgame(0.5).form);
  REQUIRE(horse_sets.size() == 3);
  CHECK(horse_sets[0].player == 1);
  CHECK(horse_sets[0].qudit == 1);
  CHECK(horse_sets[1].player == 2);
  CHECK(horse_sets[1].qudit == 2);
  CHECK(horse_sets[2].player == 3);
  CHECK(horse_sets[2].qudit == 3);
  CHECK(horse_sets[2].members ==
        std::vector<OutcomeClass>{cls("0@1"), cls("1@1,0@2")});
}

TEST_CASE("projectors and the payoff observable") {
  SUBCASE("single-class projector") {
    QuditLayout pair({2, 2});
    CHECK(qeg::class_projector_diagonal(pair, cls("1@1")) ==
          std::vector<int>{0, 0, 1, 1});
    CHECK(qeg::class_projector_diagonal(pair, cls("0@2")) ==
          std::vector<int>{1, 0, 1, 0});
    CHECK(qeg::class_projector_diagonal(pair, cls("")) ==
          std::vector<int>{1, 1, 1, 1});
    CHECK_THROWS_CODE(qeg::class_projector_diagonal(pair, cls("2@1")),
                      ErrorCode::kDimensionMismatch);
  }
  SUBCASE("pair-game observable has one payoff row per basis state") {
    qeg::PayoffOperator op =
        qeg::payoff_operator(fixtures::make_dilemma_qgame(0.3));
    CHECK(op.player_diagonals[0] == std::vector<double>{3, 0, 5, 1});
    CHECK(op.player_diagonals[1] == std::vector<double>{3, 5, 0, 1});
  }
  SUBCASE("horse-game observable leaves qubit 3 free where unmeasured") {
    qeg::PayoffOperator op =
        qeg::payoff_operator(fixtures::make_horse_qgame(0.3));
    CHECK(op.player_diagonals[0] ==
          std::vector<double>{3, 0, 3, 0, 5, 0, 2, 2});
    CHECK(op.player_diagonals[1] ==
          std::vector<double>{3, 0, 3, 0, 5, 0, 2, 2});
    CHECK(op.player_diagonals[2] ==
          std::vector<double>{1, 0, 1, 0, 0, 1, 2, 2});
  }
  SUBCASE("terminal projectors tile the basis exactly once") {
    CHECK(qeg::check_projector_orthogonality(fixtures::make_dilemma_qgame(0.9)));
    CHECK(qeg::check_projector_orthogonality(fixtures::make_horse_qgame(0.9)));
    CHECK(qeg::check_projector_orthogonality(
        fixtures::make_dilemma_qgame(0.9, 1)));
  }
  SUBCASE("an overlapping collection fails the tiling check") {
    QuantumExtensiveGame bad;
    bad.form.num_players = 2;
    bad.form.initial_state =
        qeg::ghz_like_state(QuditLayout({2, 2}), 0.0);
    for (const char* key : {"", "0@1", "1@1", "0@2", "1@2"})
      bad.form.classes.classes.insert(cls(key));
    CHECK_FALSE(qeg::check_projector_orthogonality(bad));
  }
}

TEST_CASE("class utilities with trace verification") {
  QuantumExtensiveGame horse = fixtures::make_horse_qgame(1.1);

  CHECK(qeg::class_utility(horse, cls("1@1,0@2,0@3")) ==
        PayoffVector{5, 5, 0});
  CHECK(qeg::class_utility(horse, cls("0@1,1@3")) == PayoffVector{0, 0, 0});
  CHECK_THROWS_CODE(qeg::class_utility(horse, cls("1@1")),
                    ErrorCode::kNotTerminal);
  CHECK_THROWS_CODE(qeg::class_utility(horse, cls("1@2")),
                    ErrorCode::kUnknownClass);

  for (double gamma : {0.0, 0.4, kPi / 2, 2.5, kPi})
    for (const OutcomeClass& terminal :
         qeg::terminal_classes(fixtures::make_horse_qgame(gamma).form))
      CHECK(qeg::class_utility(fixtures::make_horse_qgame(gamma), terminal,
                               /*verify_trace=*/true) ==
            fixtures::make_horse_qgame(gamma).payoffs.at(terminal));
}

TEST_CASE("representative runs collapse onto their own class only") {
  // For a run realizing a class, the class's projector has expectation 1
  // and every other terminal projector has expectation 0.
  for (double gamma : {0.2, 1.3, 2.8}) {
    QuantumExtensiveGame horse = fixtures::make_horse_qgame(gamma);
    const QuditLayout& layout = horse.form.initial_state.layout();
    auto terminals = qeg::terminal_classes(horse.form);
    for (const OutcomeClass& target : terminals) {
      qeg::RunResult run = qeg::class_representative_run(horse, target);
      CHECK(run.probability > 0.0);
      for (const OutcomeClass& other : terminals) {
        const double expect = diag_expectation(
            qeg::class_projector_diagonal(layout, other), run.state);
        CHECK(expect == doctest::Approx(other == target ? 1.0 : 0.0)
                            .epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("profile play on the horse game matches the closed forms") {
  SUBCASE("mixed-shift profile reaches exactly two classes") {
    for (double gamma : {0.3, 1.0, kPi / 2, 2.2}) {
      QuantumExtensiveGame horse = fixtures::make_horse_qgame(gamma);
      auto leaves = qeg::play_profile(
          horse, qprofile({{{1, 1}, named_shift(2, 0)},
                           {{2, 2}, named_shift(2, 1)},
                           {{3, 3}, named_shift(2, 0)}}));
      const double c2 = std::pow(std::cos(gamma / 2), 2);
      REQUIRE(leaves.size() == 2);
      CHECK(leaves[0].cls == cls("0@1,0@3"));
      CHECK(leaves[0].probability == doctest::Approx(c2).epsilon(1e-12));
      CHECK(leaves[1].cls == cls("1@1,0@2,1@3"));
      CHECK(leaves[1].probability ==
            doctest::Approx(1.0 - c2).epsilon(1e-12));

      CHECK(qeg::approx_equal(
          qeg::expected_utility(horse,
                                qprofile({{{1, 1}, named_shift(2, 0)},
                                          {{2, 2}, named_shift(2, 1)},
                                          {{3, 3}, named_shift(2, 0)}})),
          PayoffVector{3 * c2, 3 * c2, 1}, 1e-9));
    }
  }
  SUBCASE("uniform shift profiles follow the cosine law") {
    for (double gamma : {0.0, 0.4, 1.1, kPi / 2, 2.0, kPi}) {
      QuantumExtensiveGame horse = fixtures::make_horse_qgame(gamma);
      for (int t = 0; t < 2; ++t) {
        PayoffVector u = qeg::expected_utility(
            horse, qprofile({{{1, 1}, named_shift(2, t)},
                             {{2, 2}, named_shift(2, t)},
                             {{3, 3}, named_shift(2, t)}}));
        const double k = std::cos(t * kPi - gamma);
        CHECK(u[0] == doctest::Approx((5 + k) / 2).epsilon(1e-12));
        CHECK(u[1] == doctest::Approx((5 + k) / 2).epsilon(1e-12));
        CHECK(u[2] == doctest::Approx((3 - k) / 2).epsilon(1e-12));
      }
    }
  }
  SUBCASE("profile errors") {
    QuantumExtensiveGame horse = fixtures::make_horse_qgame(0.8);
    CHECK_THROWS_CODE(
        qeg::play_profile(horse, qprofile({{{1, 1}, named_shift(2, 0)},
                                           {{3, 3}, named_shift(2, 0)}})),
        ErrorCode::kIncompleteProfile);
    CHECK_THROWS_CODE(
        qeg::play_profile(horse, qprofile({{{1, 1}, named_shift(3, 0)},
                                           {{2, 2}, named_shift(2, 0)},
                                           {{3, 3}, named_shift(2, 0)}})),
        ErrorCode::kDimensionMismatch);
  }
}

TEST_CASE("pair-game play reproduces the closed-form distribution") {
  SUBCASE("identity corner") {
    QuantumExtensiveGame dilemma = fixtures::make_dilemma_qgame(0.0);
    auto leaves = qeg::play_profile(
        dilemma, qprofile({{{1, 1}, named_shift(2, 0)},
                           {{2, 2}, named_shift(2, 0)}}));
    REQUIRE(leaves.size() == 1);
    CHECK(leaves[0].cls == cls("0@1,0@2"));
    CHECK(leaves[0].probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(qeg::approx_equal(
        qeg::expected_utility(dilemma,
                              qprofile({{{1, 1}, named_shift(2, 0)},
                                        {{2, 2}, named_shift(2, 0)}})),
        PayoffVector{3, 3}, 1e-12));
  }
  SUBCASE("two-parameter moves land on the closed-form weights") {
    const double gamma = 0.9;
    QuantumExtensiveGame dilemma = fixtures::make_dilemma_qgame(gamma);
    QStrategyProfile profile = qprofile(
        {{{1, 1}, NamedOperator{"U1", qeg::eisert_operator(1.1, 0.7)}},
         {{2, 2}, NamedOperator{"U2", qeg::eisert_operator(2.0, 0.3)}}});
    auto leaves = qeg::play_profile(dilemma, profile);
    REQUIRE(leaves.size() == 4);
    CHECK(leaves[0].probability ==
          doctest::Approx(0.34216769764440019).epsilon(1e-12));
    CHECK(leaves[1].probability ==
          doctest::Approx(0.29881223767912457).epsilon(1e-12));
    CHECK(leaves[2].probability ==
          doctest::Approx(0.028491791424596541).epsilon(1e-12));
    CHECK(leaves[3].probability ==
          doctest::Approx(0.33052827325187872).epsilon(1e-12));
  }
  SUBCASE("the distribution agrees with the density-matrix oracle") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_real_distribution<double> in_pi(0.0, kPi);
      const double gamma = in_pi(rng);
      QuantumExtensiveGame dilemma = fixtures::make_dilemma_qgame(gamma);
      Unitary u1 = testgen::random_unitary(2, rng);
      Unitary u2 = testgen::random_unitary(2, rng);

      auto leaves = qeg::play_profile(
          dilemma, qprofile({{{1, 1}, NamedOperator{"A", u1}},
                             {{2, 2}, NamedOperator{"B", u2}}}));

      oracle::Mat m1 = oracle::zeros(2, 2), m2 = oracle::zeros(2, 2);
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
          m1[r][c] = u1.matrix()(r, c);
          m2[r][c] = u2.matrix()(r, c);
        }
      auto reference = oracle::run_distribution(
          {2, 2}, dilemma.form.initial_state.amplitudes(),
          {{1, m1}, {2, m2}});

      double total = 0.0;
      for (const auto& leaf : leaves) {
        std::vector<int> outcomes;
        for (const auto& step : leaf.cls.steps())
          outcomes.push_back(step.outcome);
        CHECK(leaf.probability ==
              doctest::Approx(reference.at(outcomes)).epsilon(1e-9));
        total += leaf.probability;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("expected utility equals the weighted payoff-observable trace") {
  std::mt19937_64 rng(90210);
  std::uniform_real_distribution<double> in_pi(0.0, kPi);
  for (int trial = 0; trial < 10; ++trial) {
    QuantumExtensiveGame horse = fixtures::make_horse_qgame(in_pi(rng));
    QStrategyProfile profile =
        qprofile({{{1, 1}, NamedOperator{"A", testgen::random_unitary(2, rng)}},
                  {{2, 2}, NamedOperator{"B", testgen::random_unitary(2, rng)}},
                  {{3, 3}, NamedOperator{"C", testgen::random_unitary(2, rng)}}});

    qeg::PayoffOperator op = qeg::payoff_operator(horse);
    PayoffVector direct = qeg::expected_utility(horse, profile);
    PayoffVector traced(3, 0.0);
    double total = 0.0;
    for (const auto& leaf : qeg::play_profile(horse, profile)) {
      total += leaf.probability;
      for (std::size_t p = 0; p < 3; ++p)
        traced[p] += leaf.probability *
                     diag_expectation(op.player_diagonals[p], leaf.run.state);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t p = 0; p < 3; ++p)
      CHECK(traced[p] == doctest::Approx(direct[p]).epsilon(1e-9));
  }
}

TEST_CASE("a basis-state start with shift menus is fully deterministic") {
  QuditLayout pair({2, 2});
  std::vector<Complex> amps(4, Complex{0, 0});
  amps[1] = std::polar(1.0, 0.3);  // e^{0.3i} |01>
  QuantumExtensiveGame game = fixtures::make_dilemma_qgame(0.0);
  game.form.initial_state = qeg::build_state(pair, amps);

  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto leaves = qeg::play_profile(
          game, qprofile({{{1, 1}, named_shift(2, a)},
                          {{2, 2}, named_shift(2, b)}}));
      REQUIRE(leaves.size() == 1);
      CHECK(leaves[0].probability == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(leaves[0].cls == cls(std::to_string(a) + "@1," +
                                 std::to_string((1 + b) % 2) + "@2"));
    }
}

TEST_CASE("representative games and realization checking") {
  QuantumExtensiveGame qhorse = fixtures::make_horse_qgame(1.0);
  QuantumExtensiveGame qdilemma = fixtures::make_dilemma_qgame(1.0);

  SUBCASE("canonical representatives validate and mirror the structure") {
    qeg::ExtensiveGame rep = qeg::representative_game(qhorse);
    CHECK(qeg::validate_game(rep).ok());
    CHECK(rep.form.histories.size() == 9);
    CHECK(rep.form.player_fn.at(qeg::History({"1@1"})) == 2);
    CHECK(rep.utilities.at(qeg::History({"1@1", "0@2", "0@3"})) ==
          PayoffVector{5, 5, 0});
  }
  SUBCASE("the worked games realize their classical counterparts") {
    auto xi_horse = qeg::check_realization(qhorse, fixtures::make_horse_game());
    REQUIRE(xi_horse.has_value());
    CHECK(xi_horse->at(qeg::History({"a1", "b0", "c0"})) ==
          qeg::History({"1@1", "0@2", "0@3"}));

    auto xi_dilemma =
        qeg::check_realization(qdilemma, fixtures::make_dilemma_game());
    REQUIRE(xi_dilemma.has_value());
    CHECK(xi_dilemma->at(qeg::History::root()) == qeg::History::root());
    CHECK(xi_dilemma->at(qeg::History({"C"})) == qeg::History({"0@1"}));
    CHECK(xi_dilemma->at(qeg::History({"D"})) == qeg::History({"1@1"}));
    CHECK(xi_dilemma->at(qeg::History({"C", "d"})) ==
          qeg::History({"0@1", "1@2"}));
  }
  SUBCASE("mismatched games are rejected") {
    CHECK_FALSE(
        qeg::check_realization(qdilemma, fixtures::make_horse_game()).has_value());
    qeg::ExtensiveGame skewed = fixtures::make_horse_game();
    skewed.utilities[qeg::History({"a1", "b0", "c0"})] = {0, 5, 5};
    CHECK_FALSE(qeg::check_realization(qhorse, skewed).has_value());
  }
  SUBCASE("chance-bearing classical games are refused") {
    CHECK_THROWS_CODE(
        qeg::check_realization(qdilemma, fixtures::make_coin_game()),
        ErrorCode::kChanceNotSupported);
  }
  SUBCASE("representative choice does not matter") {
    qeg::ExtensiveGame canonical = qeg::representative_game(qhorse);
    std::mt19937 rng(5150);
    for (int trial = 0; trial < 5; ++trial) {
      qeg::ExtensiveGame sampled =
          qeg::representative_game_sampled(qhorse, rng);
      auto xi = qeg::search_isomorphism(sampled, canonical);
      REQUIRE(xi.has_value());
      CHECK(qeg::check_isomorphism(sampled, canonical, *xi).ok());
    }
  }
}
