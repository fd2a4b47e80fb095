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

#ifndef CHARNUM_KONTSEVICH_HPP
#define CHARNUM_KONTSEVICH_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace charnum {

/// Number of rational plane curves of degree d through 3d-1 general points,
/// d = 1..max_d, from the classical quadratic recursion. Index 0 is unused.
inline std::vector<mpz_class> kontsevich_numbers(int max_d) {
  if (max_d < 1) throw std::invalid_argument("kontsevich_numbers: max_d must be >= 1");
  std::vector<mpz_class> n(static_cast<std::size_t>(max_d) + 1);
  n[1] = 1;
  auto binom = [](int top, int k) {
    mpz_class r;
    if (k < 0 || k > top) return r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(top), static_cast<unsigned long>(k));
    return r;
  };
  for (int d = 2; d <= max_d; ++d) {
    mpz_class sum;
    for (int d1 = 1; d1 < d; ++d1) {
      const int d2 = d - d1;
      const mpz_class w = mpz_class(d1 * d1) * (d2 * d2) * binom(3 * d - 4, 3 * d1 - 2) -
                          mpz_class(d1 * d1 * d1) * d2 * binom(3 * d - 4, 3 * d1 - 1);
      sum += n[d1] * n[d2] * w;
    }
    n[d] = sum;
  }
  return n;
}

}  // namespace charnum

#endif  // CHARNUM_KONTSEVICH_HPP
