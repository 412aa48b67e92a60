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

#ifndef QEG_STATE_HPP_
#define QEG_STATE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "qeg/errors.hpp"
#include "qeg/matrix.hpp"
#include "qeg/tolerances.hpp"

namespace qeg {

// Layout of an m-qudit register. Qudit indices are 1-based everywhere in the
// public API; qudit 1 occupies the most significant position of the
// mixed-radix basis index, so for a (2,3) layout the basis order is
// |00>,|01>,|02>,|10>,|11>,|12>.
class QuditLayout {
 public:
  QuditLayout() = default;
  explicit QuditLayout(std::vector<int> dims);

  int num_qudits() const { return static_cast<int>(dims_.size()); }
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total_dimension() const { return total_; }

  // Dimension of one qudit. Throws QuditIndexOutOfRange.
  int dim(int qudit) const {
    check_qudit(qudit);
    return dims_[qudit - 1];
  }

  // Distance between basis indices that differ by one step of this qudit's
  // digit.
  std::size_t stride(int qudit) const {
    check_qudit(qudit);
    return strides_[qudit - 1];
  }

  // The qudit's digit within a mixed-radix basis index.
  int digit(std::size_t index, int qudit) const {
    check_qudit(qudit);
    return static_cast<int>(index / strides_[qudit - 1] %
                            static_cast<std::size_t>(dims_[qudit - 1]));
  }

  void check_qudit(int qudit) const;

  friend bool operator==(const QuditLayout&, const QuditLayout&) = default;

 private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

// A unitary operator acting on a single qudit. Construction verifies
// U†U = I within kEqTol.
class Unitary {
 public:
  Unitary() = default;
  explicit Unitary(CMat matrix);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& matrix() const { return m_; }

  friend bool operator==(const Unitary&, const Unitary&) = default;

 private:
  CMat m_;
};

// A normalized pure state of a qudit register. Construction normalizes the
// amplitude vector; vectors with norm below kPruneTol are rejected as
// NotNormalizable.
class StateVector {
 public:
  StateVector() = default;
  StateVector(QuditLayout layout, std::vector<Complex> amplitudes);

  const QuditLayout& layout() const { return layout_; }
  const std::vector<Complex>& amplitudes() const { return amp_; }
  Complex amplitude(std::size_t index) const { return amp_.at(index); }
  double norm() const;

 private:
  QuditLayout layout_;
  std::vector<Complex> amp_;
};

bool approx_equal(const StateVector& a, const StateVector& b, double tol);

// Builds a register state from raw amplitudes. The input is normalized;
// length must equal the layout's total dimension.
StateVector build_state(const QuditLayout& layout,
                        std::vector<Complex> amplitudes);

// cos(gamma/2)|0...0> + i sin(gamma/2)|1...1> on an all-qubit layout.
// Requires gamma in [0, pi].
StateVector ghz_like_state(const QuditLayout& layout, double gamma);

// Applies a single-qudit unitary: I ⊗ ... ⊗ U ⊗ ... ⊗ I.
StateVector apply_on_qudit(const StateVector& state, int qudit,
                           const Unitary& op);

struct MeasurementOutcome {
  int outcome = 0;
  double probability = 0.0;
  StateVector state;  // renormalized post-measurement state
};

// Projective measurement of one qudit in the computational basis. Returns
// one entry per outcome with probability above kPruneTol, in ascending
// outcome order; probabilities sum to 1 within kEqTol.
std::vector<MeasurementOutcome> measure_qudit(const StateVector& state,
                                              int qudit);

// One executed move: which qudit was acted on, which operator (by label),
// and which measurement outcome occurred.
struct MoveRecord {
  int qudit = 0;
  std::string op_label;
  int outcome = 0;
};

struct RunResult {
  std::vector<MoveRecord> moves;
  double probability = 0.0;  // product of per-step outcome probabilities
  StateVector state;         // state after the final measurement
};

// A pending move for run_sequence: apply `op` to `qudit`, then measure that
// qudit. `label` is carried into the MoveRecords (a positional label is
// synthesized when empty).
struct Move {
  int qudit = 0;
  Unitary op;
  std::string label;
};

// Executes moves in order, branching on every measurement outcome with
// probability above kPruneTol. Each move's qudit must be distinct. Results
// are in depth-first order with outcomes ascending at every step.
std::vector<RunResult> run_sequence(const StateVector& initial,
                                    const std::vector<Move>& moves);

// The shift operator mapping |v> to e^{i*phases[v]} |v ⊕ t> (addition mod d).
// The one-argument-phase-free form uses all-zero phases, under which shift 0
// is the identity and, for d = 2, shift 1 is the Pauli-X flip.
Unitary basis_shift_operator(int d, int t);
Unitary basis_shift_operator(int d, int t, const std::vector<double>& phases);

// True when `op` maps every basis state |v> to a unit-modulus multiple of
// |v ⊕ t>, i.e. it is a shift-by-t operator up to per-column phases.
bool is_basis_shift(const Unitary& op, int t, double tol = kEqTol);

}  // namespace qeg

#endif  // QEG_STATE_HPP_
