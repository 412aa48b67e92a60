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

#ifndef QEG_TOLERANCES_HPP_
#define QEG_TOLERANCES_HPP_

#include <cstddef>

namespace qeg {

// Numeric tolerances shared across the library. Every equality-style check
// and pruning decision routes through these constants.

// Tolerance for floating-point equality: amplitudes, probabilities, payoffs,
// unitarity checks.
inline constexpr double kEqTol = 1e-9;

// Measurement branches (and chance branches) with probability at or below
// this value are treated as impossible and pruned.
inline constexpr double kPruneTol = 1e-12;

// A unilateral deviation must beat the incumbent payoff by more than this to
// count as strictly improving when searching for equilibria of simulated
// (floating-point) payoff tables.
inline constexpr double kNashTieTol = 1e-12;

// Hard caps guarding combinatorial enumeration.
inline constexpr std::size_t kMaxProfiles = 1000000;
inline constexpr std::size_t kMaxIsomorphismHistories = 10000;

}  // namespace qeg

#endif  // QEG_TOLERANCES_HPP_
