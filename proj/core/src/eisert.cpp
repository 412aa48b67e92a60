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

#include "qeg/eisert.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qeg {

namespace {

void check_angle(const char* name, double value, double lo, double hi) {
  if (!(value >= lo && value <= hi))
    fail(ErrorCode::kParamOutOfRange,
         std::string(name) + " = " + std::to_string(value) +
             " is outside [" + std::to_string(lo) + ", " +
             std::to_string(hi) + "]");
}

}  // namespace

EisertParams EisertParams::make(double gamma, double theta1, double phi1,
                                double theta2, double phi2,
                                std::array<PayoffVector, 4> payoff_table) {
  constexpr double kPi = std::numbers::pi;
  check_angle("gamma", gamma, 0.0, kPi);
  check_angle("theta1", theta1, 0.0, kPi);
  check_angle("theta2", theta2, 0.0, kPi);
  check_angle("phi1", phi1, 0.0, kPi / 2);
  check_angle("phi2", phi2, 0.0, kPi / 2);
  const std::size_t players = payoff_table[0].size();
  if (players == 0)
    fail(ErrorCode::kParamOutOfRange, "the payoff table must not be empty");
  for (const PayoffVector& row : payoff_table)
    if (row.size() != players)
      fail(ErrorCode::kParamOutOfRange,
           "payoff table rows must share one length");
  return make_unchecked(gamma, theta1, phi1, theta2, phi2,
                        std::move(payoff_table));
}

EisertParams EisertParams::make_unchecked(
    double gamma, double theta1, double phi1, double theta2, double phi2,
    std::array<PayoffVector, 4> payoff_table) {
  EisertParams p;
  p.gamma = gamma;
  p.theta1 = theta1;
  p.phi1 = phi1;
  p.theta2 = theta2;
  p.phi2 = phi2;
  p.payoff_table = std::move(payoff_table);
  return p;
}

Unitary eisert_operator(double theta, double phi) {
  constexpr double kPi = std::numbers::pi;
  check_angle("theta", theta, 0.0, kPi);
  check_angle("phi", phi, 0.0, kPi / 2);
  return eisert_operator_unchecked(theta, phi);
}

Unitary eisert_operator_unchecked(double theta, double phi) {
  CMat m(2, 2);
  m(0, 0) = std::polar(1.0, phi) * std::cos(theta / 2);
  m(0, 1) = std::sin(theta / 2);
  m(1, 0) = -std::sin(theta / 2);
  m(1, 1) = std::polar(1.0, -phi) * std::cos(theta / 2);
  return Unitary(std::move(m));
}

std::array<Complex, 4> chi_coefficients(const EisertParams& p) {
  const double c = std::cos(p.gamma / 2), s = std::sin(p.gamma / 2);
  const double c1 = std::cos(p.theta1 / 2), s1 = std::sin(p.theta1 / 2);
  const double c2 = std::cos(p.theta2 / 2), s2 = std::sin(p.theta2 / 2);
  const Complex i(0.0, 1.0);
  return {
      std::polar(1.0, p.phi1 + p.phi2) * (c * c1 * c2) + i * (s * s1 * s2),
      -std::polar(1.0, p.phi1) * (c * c1 * s2) +
          i * std::polar(1.0, -p.phi2) * (s * s1 * c2),
      -std::polar(1.0, p.phi2) * (c * s1 * c2) +
          i * std::polar(1.0, -p.phi1) * (s * c1 * s2),
      Complex(c * s1 * s2, 0.0) +
          i * std::polar(1.0, -(p.phi1 + p.phi2)) * (s * c1 * c2),
  };
}

PayoffVector eisert_payoff(const EisertParams& p) {
  const std::array<Complex, 4> chi = chi_coefficients(p);
  PayoffVector out(p.payoff_table[0].size(), 0.0);
  for (std::size_t outcome = 0; outcome < 4; ++outcome) {
    const double weight = std::norm(chi[outcome]);
    const PayoffVector& row = p.payoff_table[outcome];
    for (std::size_t player = 0; player < out.size(); ++player)
      out[player] += weight * row[player];
  }
  return out;
}

}  // namespace qeg
