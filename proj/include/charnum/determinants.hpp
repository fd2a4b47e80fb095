// Copyright 2026 The charnum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The two coefficient matrices showing that the relations determine every
// degree-d number left open by the explicit recursion, with their closed-form
// determinants.

#ifndef CHARNUM_DETERMINANTS_HPP
#define CHARNUM_DETERMINANTS_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "charnum/rational.hpp"

namespace charnum {

using Matrix = std::vector<std::vector<Rational>>;

/// Exact determinant by Gaussian elimination over the rationals.
inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw std::invalid_argument("determinant: matrix is not square");
  }
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

/// Rows 1124, 1145, 1123, 1445, 2345, 1345, 1135, 1135 acting on
/// N_d(2,3d-3,0), N_d(1,3d-4,1), N_d(0,3d-5,2), N_d(1,3d-2,0), N_d(0,3d-3,1),
/// C_d(1,3d-5,0;h^2), C_d(0,3d-6,1;h^2), C_d(0,3d-4,0;h^2).
inline Matrix matrix_8x8(std::int64_t d) {
  auto q = [](std::int64_t v) { return Rational(v); };
  return {
      {q(2 * (3 * d - 3)), q(-d), 0, 0, 0, 0, 0, 0},
      {0, q(3 * d - 4), q(-2 * d), 0, 0, 0, 0, 0},
      {q(2 * (d - 2)), 0, 0, q(-d * (3 * d - 2)), q(d * d), 0, 0, 0},
      {0, 0, q(2 * (3 * d - 5)), 0, 0, 0, q(-d), 0},
      {0, 0, q(2 * (3 * d - 5)), 0, 0, q(-(3 * d - 5)), 0, 0},
      {0, q(3 * d - 3), q(-4 * d + 4), 0, q((3 * d - 4) * (3 * d - 3)), 0, 0, q(-(3 * d - 4) * d)},
      {0, q(d - 2), 0, 0, q(-d * (3 * d - 3)), 0, 0, q(d * d)},
      {0, 0, 0, 0, q(-(3 * d - 4) * d), q(d * d), 0, 0},
  };
}

/// Rows 1133, 1134, 3344 acting on N_d(0,3d-1,0), C_d(0,3d-3,0;h), C_d(0,3d-2,0;1).
inline Matrix matrix_3x3(std::int64_t d) {
  auto q = [](std::int64_t v) { return Rational(v); };
  return {
      {q((3 * d - 1) * d * (4 - 3 * d)), q(d * d), q(1)},
      {q(-(3 * d - 2) * (3 * d - 1) * d), q(d * d), q(0)},
      {q((3 * d - 3) * (3 * d - 2) * (3 * d - 1)), q((3 * d - 3) * (7 * d + 2)), q((3 * d - 3) * (3 * d - 2))},
  };
}

inline Rational det_check_8x8(std::int64_t d) {
  if (d < 2) throw std::invalid_argument("det_check_8x8: d must be >= 2");
  return determinant(matrix_8x8(d));
}

inline Rational det_check_3x3(std::int64_t d) {
  if (d < 2) throw std::invalid_argument("det_check_3x3: d must be >= 2");
  return determinant(matrix_3x3(d));
}

/// -12 d^6 (3d-5)(d-1)(3d-4)(3d-2).
inline Rational det_8x8_closed_form(std::int64_t d) {
  Rational d6(1);
  for (int i = 0; i < 6; ++i) d6 *= Rational(d);
  return Rational(-12) * d6 * Rational(3 * d - 5) * Rational(d - 1) * Rational(3 * d - 4) * Rational(3 * d - 2);
}

/// 6 d (d-1)(3d-1)(3d-2)(d^2-4d-1).
inline Rational det_3x3_closed_form(std::int64_t d) {
  return Rational(6 * d) * Rational(d - 1) * Rational(3 * d - 1) * Rational(3 * d - 2) * Rational(d * d - 4 * d - 1);
}

}  // namespace charnum

#endif  // CHARNUM_DETERMINANTS_HPP
