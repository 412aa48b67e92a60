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

#ifndef QEG_MATRIX_HPP_
#define QEG_MATRIX_HPP_

#include <complex>
#include <cstddef>
#include <vector>

#include "qeg/errors.hpp"

namespace qeg {

using Complex = std::complex<double>;

// Small dense complex matrix. Operator dimensions in this library are the
// dimensions of single qudits, so no effort is spent on large-matrix
// performance.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static CMat identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  CMat adjoint() const {
    CMat m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
  }

  friend CMat operator*(const CMat& a, const CMat& b) {
    if (a.cols_ != b.rows_)
      fail(ErrorCode::kDimensionMismatch, "matrix product shape mismatch");
    CMat m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex arc = a(r, k);
        if (arc == Complex{}) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) m(r, c) += arc * b(k, c);
      }
    return m;
  }

  friend bool operator==(const CMat&, const CMat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> a_;
};

inline bool approx_equal(const CMat& a, const CMat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (std::abs(a(r, c) - b(r, c)) > tol) return false;
  return true;
}

inline bool is_unitary(const CMat& m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  return approx_equal(m.adjoint() * m, CMat::identity(m.rows()), tol);
}

}  // namespace qeg

#endif  // QEG_MATRIX_HPP_
