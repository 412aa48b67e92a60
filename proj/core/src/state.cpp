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

#include "qeg/state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace qeg {

namespace {

// Guard against building amplitude vectors nobody asked for.
constexpr std::size_t kMaxTotalDimension = 1u << 26;

}  // namespace

QuditLayout::QuditLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty())
    fail(ErrorCode::kDimensionMismatch, "layout needs at least one qudit");
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (dims_[i] < 2)
      fail(ErrorCode::kDimensionMismatch,
           "qudit " + std::to_string(i + 1) + " has dimension " +
               std::to_string(dims_[i]) + "; the minimum is 2");
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t i = dims_.size(); i-- > 0;) {
    if (i + 1 < dims_.size())
      strides_[i] = strides_[i + 1] * static_cast<std::size_t>(dims_[i + 1]);
    if (strides_[i] > kMaxTotalDimension / static_cast<std::size_t>(dims_[i]))
      fail(ErrorCode::kExplosionGuard, "register dimension exceeds the cap");
  }
  total_ = strides_[0] * static_cast<std::size_t>(dims_[0]);
}

void QuditLayout::check_qudit(int qudit) const {
  if (qudit < 1 || qudit > num_qudits())
    fail(ErrorCode::kQuditIndexOutOfRange,
         "qudit " + std::to_string(qudit) + " outside 1.." +
             std::to_string(num_qudits()));
}

Unitary::Unitary(CMat matrix) : m_(std::move(matrix)) {
  if (!is_unitary(m_, kEqTol))
    fail(ErrorCode::kNotUnitary, "matrix is not unitary within tolerance");
}

StateVector::StateVector(QuditLayout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amp_(std::move(amplitudes)) {
  if (amp_.size() != layout_.total_dimension())
    fail(ErrorCode::kLengthMismatch,
         "amplitude count " + std::to_string(amp_.size()) +
             " does not match register dimension " +
             std::to_string(layout_.total_dimension()));
  double n2 = 0.0;
  for (const Complex& a : amp_) n2 += std::norm(a);
  const double n = std::sqrt(n2);
  if (n < kPruneTol)
    fail(ErrorCode::kNotNormalizable, "amplitude vector has negligible norm");
  if (n != 1.0)
    for (Complex& a : amp_) a /= n;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const Complex& a : amp_) n2 += std::norm(a);
  return std::sqrt(n2);
}

bool approx_equal(const StateVector& a, const StateVector& b, double tol) {
  if (a.layout() != b.layout()) return false;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i)
    if (std::abs(a.amplitudes()[i] - b.amplitudes()[i]) > tol) return false;
  return true;
}

StateVector build_state(const QuditLayout& layout,
                        std::vector<Complex> amplitudes) {
  return StateVector(layout, std::move(amplitudes));
}

StateVector ghz_like_state(const QuditLayout& layout, double gamma) {
  for (int d : layout.dims())
    if (d != 2)
      fail(ErrorCode::kNonQubitLayout,
           "entanglement parameter form is defined on qubit registers only");
  if (!(gamma >= 0.0 && gamma <= std::numbers::pi))
    fail(ErrorCode::kGammaOutOfRange,
         "gamma " + std::to_string(gamma) + " outside [0, pi]");
  std::vector<Complex> amp(layout.total_dimension());
  amp.front() = std::cos(gamma / 2.0);
  amp.back() = Complex(0.0, std::sin(gamma / 2.0));
  return StateVector(layout, std::move(amp));
}

StateVector apply_on_qudit(const StateVector& state, int qudit,
                           const Unitary& op) {
  const QuditLayout& layout = state.layout();
  layout.check_qudit(qudit);
  const int d = layout.dim(qudit);
  if (op.dim() != d)
    fail(ErrorCode::kDimensionMismatch,
         "operator dimension " + std::to_string(op.dim()) +
             " does not match qudit dimension " + std::to_string(d));

  const std::size_t stride = layout.stride(qudit);
  const std::size_t total = layout.total_dimension();
  std::vector<Complex> out(state.amplitudes());
  std::vector<Complex> column(d);
  // Iterate over all assignments of the remaining qudits: the basis indices
  // that share every digit except this qudit's form a strided group.
  const std::size_t groups = total / static_cast<std::size_t>(d);
  for (std::size_t g = 0; g < groups; ++g) {
    const std::size_t base =
        (g / stride) * stride * static_cast<std::size_t>(d) + g % stride;
    for (int k = 0; k < d; ++k)
      column[k] = out[base + static_cast<std::size_t>(k) * stride];
    for (int r = 0; r < d; ++r) {
      Complex acc{};
      for (int c = 0; c < d; ++c)
        acc += op.matrix()(static_cast<std::size_t>(r),
                           static_cast<std::size_t>(c)) *
               column[c];
      out[base + static_cast<std::size_t>(r) * stride] = acc;
    }
  }
  return StateVector(layout, std::move(out));
}

std::vector<MeasurementOutcome> measure_qudit(const StateVector& state,
                                              int qudit) {
  const QuditLayout& layout = state.layout();
  layout.check_qudit(qudit);
  const int d = layout.dim(qudit);
  const std::size_t total = layout.total_dimension();

  std::vector<double> prob(static_cast<std::size_t>(d), 0.0);
  for (std::size_t i = 0; i < total; ++i)
    prob[static_cast<std::size_t>(layout.digit(i, qudit))] +=
        std::norm(state.amplitudes()[i]);

  std::vector<MeasurementOutcome> results;
  for (int v = 0; v < d; ++v) {
    const double p = prob[static_cast<std::size_t>(v)];
    if (p <= kPruneTol) continue;
    std::vector<Complex> post(total);
    const double scale = 1.0 / std::sqrt(p);
    for (std::size_t i = 0; i < total; ++i)
      if (layout.digit(i, qudit) == v)
        post[i] = state.amplitudes()[i] * scale;
    results.push_back(
        MeasurementOutcome{v, p, StateVector(layout, std::move(post))});
  }
  return results;
}

namespace {

void run_sequence_from(const StateVector& state, const std::vector<Move>& moves,
                       std::size_t next, double probability,
                       std::vector<MoveRecord>& trail,
                       std::vector<RunResult>& out) {
  if (next == moves.size()) {
    out.push_back(RunResult{trail, probability, state});
    return;
  }
  const Move& move = moves[next];
  const std::string label =
      move.label.empty() ? "op" + std::to_string(next + 1) : move.label;
  const StateVector rotated = apply_on_qudit(state, move.qudit, move.op);
  for (const MeasurementOutcome& m : measure_qudit(rotated, move.qudit)) {
    trail.push_back(MoveRecord{move.qudit, label, m.outcome});
    run_sequence_from(m.state, moves, next + 1, probability * m.probability,
                      trail, out);
    trail.pop_back();
  }
}

}  // namespace

std::vector<RunResult> run_sequence(const StateVector& initial,
                                    const std::vector<Move>& moves) {
  std::set<int> seen;
  for (const Move& move : moves) {
    initial.layout().check_qudit(move.qudit);
    if (!seen.insert(move.qudit).second)
      fail(ErrorCode::kRepeatedQudit,
           "qudit " + std::to_string(move.qudit) + " is acted on twice");
    if (move.op.dim() != initial.layout().dim(move.qudit))
      fail(ErrorCode::kDimensionMismatch,
           "operator dimension does not match qudit " +
               std::to_string(move.qudit));
  }
  std::vector<RunResult> out;
  std::vector<MoveRecord> trail;
  run_sequence_from(initial, moves, 0, 1.0, trail, out);
  return out;
}

Unitary basis_shift_operator(int d, int t) {
  return basis_shift_operator(d, t, std::vector<double>(d, 0.0));
}

Unitary basis_shift_operator(int d, int t, const std::vector<double>& phases) {
  if (d < 2)
    fail(ErrorCode::kDimensionMismatch,
         "shift operator dimension must be at least 2");
  if (t < 0 || t >= d)
    fail(ErrorCode::kShiftOutOfRange,
         "shift " + std::to_string(t) + " outside 0.." + std::to_string(d - 1));
  if (phases.size() != static_cast<std::size_t>(d))
    fail(ErrorCode::kLengthMismatch,
         "expected " + std::to_string(d) + " phases, got " +
             std::to_string(phases.size()));
  CMat m(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  for (int v = 0; v < d; ++v) {
    const int image = (v + t) % d;
    m(static_cast<std::size_t>(image), static_cast<std::size_t>(v)) =
        std::polar(1.0, phases[static_cast<std::size_t>(v)]);
  }
  return Unitary(std::move(m));
}

bool is_basis_shift(const Unitary& op, int t, double tol) {
  const int d = op.dim();
  if (d == 0 || t < 0 || t >= d) return false;
  for (int v = 0; v < d; ++v) {
    const int image = (v + t) % d;
    for (int r = 0; r < d; ++r) {
      const Complex entry =
          op.matrix()(static_cast<std::size_t>(r), static_cast<std::size_t>(v));
      if (r == image) {
        if (std::abs(std::abs(entry) - 1.0) > tol) return false;
      } else if (std::abs(entry) > tol) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace qeg
