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

#ifndef QEG_EISERT_HPP_
#define QEG_EISERT_HPP_

#include <array>

#include "qeg/extensive_game.hpp"
#include "qeg/state.hpp"

namespace qeg {

// Parameters of the two-player static scheme on an entangled qubit pair:
// the entanglement angle, one (theta, phi) pair per player, and the payoff
// table indexed by the measured outcome pair (00, 01, 10, 11).
struct EisertParams {
  double gamma = 0.0;
  double theta1 = 0.0;
  double phi1 = 0.0;
  double theta2 = 0.0;
  double phi2 = 0.0;
  std::array<PayoffVector, 4> payoff_table{};

  // Enforces gamma, theta in [0, pi] and phi in [0, pi/2], and a payoff
  // table whose four entries share one positive length.
  // Throws ParamOutOfRange.
  static EisertParams make(double gamma, double theta1, double phi1,
                           double theta2, double phi2,
                           std::array<PayoffVector, 4> payoff_table);

  // Permissive variant: any real angles are accepted and the closed forms
  // are evaluated as written. Meant for oracle-style cross checks.
  static EisertParams make_unchecked(double gamma, double theta1, double phi1,
                                     double theta2, double phi2,
                                     std::array<PayoffVector, 4> payoff_table);
};

// cos(theta/2) diag(e^{i phi}, e^{-i phi}) + sin(theta/2) [[0,1],[-1,0]].
// Throws ParamOutOfRange outside theta in [0, pi], phi in [0, pi/2].
Unitary eisert_operator(double theta, double phi);

// Same matrix without the range check.
Unitary eisert_operator_unchecked(double theta, double phi);

// Closed-form final-state amplitudes over the two-qubit basis, ordered
// 00, 01, 10, 11. Their squared moduli always sum to 1.
std::array<Complex, 4> chi_coefficients(const EisertParams& p);

// Expected payoff vector: sum over outcomes of |chi|^2 times the table row.
PayoffVector eisert_payoff(const EisertParams& p);

}  // namespace qeg

#endif  // QEG_EISERT_HPP_
