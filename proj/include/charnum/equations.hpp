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

// The nine recursion equations for N_d(a,b,c) and C_d(a,b,c;1|h|h^2), each an
// instance of the four-point relation G(ij|kl) = G(il|jk) solved for one
// degree-d unknown. Equation names follow the (i,j,k,l) index pattern.
//
// Every equation exists in two transcriptions:
//   literal    the coefficients as commonly quoted;
//   rederived  the coefficients obtained by expanding G(ij|kl) directly.
// The quoted forms of 1122a, 1122b, 1155, 1123a, 1123b, 2245, 1134 and 1133
// contain coefficient slips (see docs/equations.md); only the rederived set
// reproduces the reference tables, so it is the default. 1144 is the same in
// both.

#ifndef CHARNUM_EQUATIONS_HPP
#define CHARNUM_EQUATIONS_HPP

#include <array>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "charnum/invariant.hpp"
#include "charnum/rational.hpp"

namespace charnum {

enum class EquationId : std::uint8_t {
  e1122a, e1122b, e1155, e1123a, e1123b, e2245, e1144, e1134, e1133, base,
};

inline constexpr std::array<EquationId, 9> kRecursionEquations = {
    EquationId::e1122a, EquationId::e1122b, EquationId::e1155, EquationId::e1123a, EquationId::e1123b,
    EquationId::e2245,  EquationId::e1144,  EquationId::e1134, EquationId::e1133};

inline std::string_view equation_name(EquationId id) {
  constexpr std::array<std::string_view, 10> kNames = {"1122a", "1122b", "1155", "1123a", "1123b",
                                                       "2245",  "1144",  "1134", "1133",  "base"};
  return kNames[static_cast<std::size_t>(id)];
}

enum class Transcription : std::uint8_t { literal, rederived };

/// Which transcription each recursion equation uses.
struct EquationSet {
  std::array<Transcription, 9> variant{};

  /// The set that reproduces the reference tables.
  static EquationSet reference() {
    EquationSet s;
    s.variant.fill(Transcription::rederived);
    return s;
  }
  static EquationSet literal() {
    EquationSet s;
    s.variant.fill(Transcription::literal);
    return s;
  }

  Transcription of(EquationId id) const { return variant.at(static_cast<std::size_t>(id)); }
  EquationSet& with(EquationId id, Transcription t) {
    variant.at(static_cast<std::size_t>(id)) = t;
    return *this;
  }
};

/// Source of N and C values for the evaluators. Only called with keys that
/// pass is_valid().
template <class L>
concept InvariantLookup = requires(L& l, int d, int a, int b, int c, CondClass s) {
  { l.n(d, a, b, c) } -> std::convertible_to<Rational>;
  { l.cusp(d, a, b, c, s) } -> std::convertible_to<Rational>;
};

/// Picks the equation that determines N_d(a,b,c), d >= 2.
inline EquationId dispatch(const InvariantKey& key) {
  if (key.family != Family::N || key.d < 2 || !is_valid(key)) {
    throw std::invalid_argument("dispatch: expected a valid N key with d >= 2, got " + key.to_string());
  }
  const int a = key.a;
  const int c = key.c;
  if (a >= 4 || (a == 3 && c >= 1)) return EquationId::e1122a;
  if (a >= 1 && c >= 2) return EquationId::e1155;
  if (c >= 3) return EquationId::e1123a;
  if ((a == 3 && c == 0) || (a == 2 && c == 1) || (a == 1 && c == 1) || (a == 2 && c == 0) ||
      (a == 1 && c == 0)) {
    return EquationId::e1123b;
  }
  if (a == 0 && (c == 2 || c == 1)) return EquationId::e2245;
  return EquationId::e1122b;
}

/// The equation for C_d(·;s), d >= 3; only s in {1, h, h^2} has one.
inline std::optional<EquationId> cusp_equation(CondClass s) {
  switch (s) {
    case CondClass::h2: return EquationId::e1144;
    case CondClass::h: return EquationId::e1134;
    case CondClass::one: return EquationId::e1133;
    default: return std::nullopt;
  }
}

namespace detail {

/// Overflow-checked integer used for the binomial-and-degree coefficients.
class Count {
 public:
  constexpr Count(std::int64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  constexpr std::int64_t get() const { return v_; }

  friend Count operator+(Count x, Count y) {
    std::int64_t r = 0;
    if (__builtin_add_overflow(x.v_, y.v_, &r)) overflow();
    return Count(r);
  }
  friend Count operator-(Count x, Count y) {
    std::int64_t r = 0;
    if (__builtin_sub_overflow(x.v_, y.v_, &r)) overflow();
    return Count(r);
  }
  friend Count operator*(Count x, Count y) {
    std::int64_t r = 0;
    if (__builtin_mul_overflow(x.v_, y.v_, &r)) overflow();
    return Count(r);
  }
  friend bool operator==(Count x, Count y) { return x.v_ == y.v_; }

 private:
  [[noreturn]] static void overflow() { throw std::overflow_error("recursion coefficient exceeds 64 bits"); }
  std::int64_t v_;
};

inline Count binom(int n, int k) { return Count(binomial_count(n, k)); }

template <InvariantLookup L>
Rational lookup_n(L& lk, int d, int a, int b, int c) {
  if (!is_valid(InvariantKey::n(d, a, b, c))) return Rational(0);
  return lk.n(d, a, b, c);
}

template <InvariantLookup L>
Rational lookup_cusp(L& lk, int d, int a, int b, int c, CondClass s) {
  if (!is_valid(InvariantKey::cusp(d, a, b, c, s))) return Rational(0);
  return lk.cusp(d, a, b, c, s);
}

template <InvariantLookup L>
Rational lookup_e(L& lk, int d, int a, int b, int c, CondClass s) {
  return e_from_n(d, a, b, c, s, [&](int dd, int aa, int bb, int cc) { return lk.n(dd, aa, bb, cc); });
}

struct NoExclusion {
  constexpr bool operator()(int, int, int, int, int, int, int, int) const { return false; }
};

/// Σ N_{d1}(a1,b1,c1) · E_{d2}(a2,b2,c2; e_cls) · coef over d1 + d2 = total_d
/// (d1, d2 > 0) and all nonnegative splits of (A, B, C). Terms are visited in
/// ascending (d1, a1, b1, c1); c1 is fixed by the N dimension rule.
template <InvariantLookup L, class Coef, class Exclude = NoExclusion>
Rational pair_sum(L& lk, int total_d, int A, int B, int C, CondClass e_cls, Coef&& coef,
                  Exclude&& exclude = {}) {
  Rational sum;
  if (A < 0 || B < 0 || C < 0) return sum;
  for (int d1 = 1; d1 < total_d; ++d1) {
    const int d2 = total_d - d1;
    for (int a1 = 0; a1 <= A; ++a1) {
      for (int b1 = 0; b1 <= B; ++b1) {
        const int rest = 3 * d1 - 1 - a1 - b1;
        if (rest < 0) break;
        if (rest % 2 != 0 || rest / 2 > C) continue;
        const int c1 = rest / 2;
        const int a2 = A - a1;
        const int b2 = B - b1;
        const int c2 = C - c1;
        if (exclude(d1, a1, b1, c1, d2, a2, b2, c2)) continue;
        const Count k = coef(d1, d2, a1, b1, c1);
        if (k == 0) continue;
        Rational n = lookup_n(lk, d1, a1, b1, c1);
        if (n.is_zero()) continue;
        Rational e = lookup_e(lk, d2, a2, b2, c2, e_cls);
        if (e.is_zero()) continue;
        n *= e;
        n *= Rational(k.get());
        sum += n;
      }
    }
  }
  return sum;
}

inline Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }

}  // namespace detail

// ---------------------------------------------------------------------------
// N equations
// ---------------------------------------------------------------------------

/// 1122a, valid for a >= 3.
template <InvariantLookup L>
Rational eval_1122a(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, a = key.a, b = key.b, c = key.c;
  const int m = a - 3;
  auto tangency = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = (t == Transcription::literal)
                        ? 2 * d1 * d1 * d2 * binom(m, a1 - 1) - Count(d1) * d1 * d1 * d2 * binom(m, a1) -
                              d1 * d2 * d2 * binom(m, a1 - 1)
                        : 2 * d1 * d1 * d2 * binom(m, a1 - 1) - Count(d1) * d1 * d1 * binom(m, a1) -
                              d1 * d2 * d2 * binom(m, a1 - 2);
    return k * binom(b, b1) * binom(c, c1);
  };
  auto line = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = (t == Transcription::literal)
                        ? 2 * d1 * d2 * binom(m, a1 - 2) - d1 * d1 * binom(m, a1 - 1) - d2 * d2 * binom(m, a1 - 2)
                        : 2 * d1 * d2 * binom(m, a1 - 2) - d1 * d1 * binom(m, a1 - 1) - d2 * d2 * binom(m, a1 - 3);
    return k * binom(b, b1) * binom(c, c1);
  };
  return detail::pair_sum(lk, d, a - 1, b, c, CondClass::hv2, tangency) +
         detail::pair_sum(lk, d, a, b, c, CondClass::hv, line);
}

/// 1122b: N_d(0,b,0), solved out of 1122a at degree d+1 with a = 3.
template <InvariantLookup L>
Rational eval_1122b(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, b = key.b;
  auto excluded = [&](int d1, int a1, int b1, int, int d2, int a2, int b2, int) {
    return (d1 == d && a1 == 0 && b1 == b) || (d2 == d && a2 == 0 && b2 == b);
  };
  auto tangency = [&](int d1, int d2, int a1, int b1, int) -> Count {
    const Count k = (t == Transcription::literal)
                        ? 2 * d1 * d1 * d2 * binom(0, a1 - 1) - Count(d1) * d1 * d1 * d2 * binom(0, a1) -
                              d1 * d2 * d2 * binom(0, a1 - 1)
                        : 2 * d1 * d1 * d2 * binom(0, a1 - 1) - Count(d1) * d1 * d1 * binom(0, a1) -
                              d1 * d2 * d2 * binom(0, a1 - 2);
    return k * binom(b, b1);
  };
  auto line = [&](int d1, int d2, int a1, int b1, int) -> Count {
    const Count k = (t == Transcription::literal)
                        ? 2 * d1 * d2 * binom(0, a1 - 2) - d1 * d1 * binom(0, a1 - 1) - d2 * d2 * binom(0, a1 - 2)
                        : 2 * d1 * d2 * binom(0, a1 - 2) - d1 * d1 * binom(0, a1 - 1) - d2 * d2 * binom(0, a1 - 3);
    return k * binom(b, b1);
  };
  Rational r = -detail::lookup_n(lk, d + 1, 3, b, 0);
  r -= Rational(std::int64_t{d} * d * b) * detail::lookup_n(lk, d, 1, b - 1, 0);
  r += detail::pair_sum(lk, d + 1, 2, b, 0, CondClass::hv2, tangency, excluded);
  r += detail::pair_sum(lk, d + 1, 3, b, 0, CondClass::hv, line);
  return r / Rational(std::int64_t{d} * d * d);
}

/// 1155, valid for a >= 1 and c >= 2.
template <InvariantLookup L>
Rational eval_1155(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, a = key.a, b = key.b, c = key.c;
  auto tangency = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count middle = (t == Transcription::literal) ? 2 * d1 * d1 * d2 * binom(c - 2, c1 - 2)
                                                       : d1 * d2 * d2 * binom(c - 2, c1 - 2);
    const Count k = 2 * d1 * d1 * d2 * binom(c - 2, c1 - 1) - middle - Count(d1) * d1 * d1 * binom(c - 2, c1);
    return k * binom(a - 1, a1) * binom(b, b1);
  };
  auto line = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k =
        2 * d1 * d2 * binom(c - 2, c1 - 1) - d1 * d1 * binom(c - 2, c1) - d2 * d2 * binom(c - 2, c1 - 2);
    return k * binom(a - 1, a1 - 1) * binom(b, b1);
  };
  return detail::pair_sum(lk, d, a - 1, b, c, CondClass::hv2, tangency) +
         detail::pair_sum(lk, d, a, b, c, CondClass::hv, line);
}

/// 1123a, valid for c >= 1.
template <InvariantLookup L>
Rational eval_1123a(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, a = key.a, b = key.b, c = key.c;
  auto tangency = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = 2 * d1 * d2 * d2 * binom(a, a1 - 1) - 2 * d1 * d1 * d2 * binom(a, a1);
    return k * binom(b, b1) * binom(c - 1, c1);
  };
  auto line = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = 2 * d2 * d2 * binom(a, a1 - 2) - 2 * d1 * d2 * binom(a, a1 - 1);
    return k * binom(b, b1) * binom(c - 1, c1);
  };
  const std::int64_t shift = (t == Transcription::literal) ? 1 : d;
  Rational r = Rational(shift) * detail::lookup_n(lk, d, a + 1, b + 1, c - 1);
  r -= Rational(d - 2) * detail::lookup_n(lk, d, a + 2, b, c - 1);
  r += detail::pair_sum(lk, d, a + 1, b, c - 1, CondClass::hv2, tangency);
  r += detail::pair_sum(lk, d, a + 2, b, c - 1, CondClass::hv, line);
  return r / Rational(std::int64_t{d} * d);
}

/// 1123b, the same relation solved for N_d(a,b,c) with a >= 1 and b >= 1.
template <InvariantLookup L>
Rational eval_1123b(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, a = key.a, b = key.b, c = key.c;
  auto tangency = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = 2 * d1 * d1 * d2 * binom(a - 1, a1) - 2 * d1 * d2 * d2 * binom(a - 1, a1 - 1);
    return k * binom(b - 1, b1) * binom(c, c1);
  };
  auto line = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = 2 * d1 * d2 * binom(a - 1, a1 - 1) - 2 * d2 * d2 * binom(a - 1, a1 - 2);
    return k * binom(b - 1, b1) * binom(c, c1);
  };
  Rational r = Rational(d - 2) * detail::lookup_n(lk, d, a + 1, b - 1, c);
  r += Rational(std::int64_t{d} * d) * detail::lookup_n(lk, d, a - 1, b - 1, c + 1);
  r += detail::pair_sum(lk, d, a, b - 1, c, CondClass::hv2, tangency);
  r += detail::pair_sum(lk, d, a + 1, b - 1, c, CondClass::hv, line);
  if (t == Transcription::literal) return r;
  return r / Rational(d);
}

/// 2245: N_d(0,b,c) with b, c >= 1, solved out of the a = 2 instance at degree d+1.
template <InvariantLookup L>
Rational eval_2245(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, b = key.b, c = key.c;
  auto excluded = [&](int d1, int a1, int b1, int c1, int d2, int a2, int b2, int c2) {
    return (d1 == d && a1 == 0 && b1 == b && c1 == c) || (d2 == d && a2 == 0 && b2 == b && c2 == c);
  };
  auto tangency = [&](int d1, int, int a1, int b1, int c1) -> Count {
    const Count k = binom(0, a1 - 2) * binom(b - 1, b1) * binom(c - 1, c1) +
                    binom(0, a1) * binom(b - 1, b1 - 1) * binom(c - 1, c1 - 1) -
                    binom(0, a1 - 1) * binom(b - 1, b1) * binom(c - 1, c1 - 1) -
                    binom(0, a1 - 1) * binom(b - 1, b1 - 1) * binom(c - 1, c1);
    return Count(d1) * k;
  };
  auto line = [&](int, int, int a1, int b1, int c1) -> Count {
    if (t == Transcription::literal) {
      return binom(0, a1 - 3) * binom(b - 1, b1) * binom(c - 1, c1) +
             binom(0, a1 - 1) * binom(b - 1, b1 - 1) * binom(c - 1, c1 - 1) -
             binom(0, a1 - 2) * binom(b - 1, b1) * binom(c - 1, c1) -
             binom(0, a1) * binom(b - 1, b1 - 1) * binom(c - 1, c1);
    }
    return binom(0, a1 - 3) * binom(b - 1, b1) * binom(c - 1, c1) +
           binom(0, a1 - 1) * binom(b - 1, b1 - 1) * binom(c - 1, c1 - 1) -
           binom(0, a1 - 2) * binom(b - 1, b1) * binom(c - 1, c1 - 1) -
           binom(0, a1 - 2) * binom(b - 1, b1 - 1) * binom(c - 1, c1);
  };
  Rational r = -Rational(b) * detail::lookup_n(lk, d, 1, b - 1, c);
  r -= detail::pair_sum(lk, d + 1, 2, b, c, CondClass::hv2, tangency, excluded);
  const Rational lines = detail::pair_sum(lk, d + 1, 3, b, c, CondClass::hv, line);
  if (t == Transcription::literal) {
    r += lines;
  } else {
    r -= lines;
  }
  return r / Rational(d);
}

// ---------------------------------------------------------------------------
// Cuspidal equations (d >= 3)
// ---------------------------------------------------------------------------

/// 1144: C_d(a,b,c;h^2) with a + b + 2c = 3d - 4.
template <InvariantLookup L>
Rational eval_1144(const InvariantKey& key, L& lk, Transcription = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, a = key.a, b = key.b, c = key.c;
  auto tangency = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = 2 * d1 * d1 * d2 * binom(b, b1 - 1) - d1 * d2 * d2 * binom(b, b1 - 2) -
                    Count(d1) * d1 * d1 * binom(b, b1);
    return k * binom(a, a1) * binom(c, c1);
  };
  auto line = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = 2 * d1 * d2 * binom(b, b1 - 1) - d1 * d1 * binom(b, b1) - d2 * d2 * binom(b, b1 - 2);
    return k * binom(a, a1 - 1) * binom(c, c1);
  };
  Rational r = Rational(2 * d) * detail::lookup_n(lk, d, a, b + 1, c + 1);
  r -= detail::lookup_n(lk, d, a + 1, b + 2, c);
  r += detail::pair_sum(lk, d, a, b + 2, c, CondClass::hv2, tangency);
  r += detail::pair_sum(lk, d, a + 1, b + 2, c, CondClass::hv, line);
  return r / Rational(std::int64_t{d} * d);
}

/// 1134: C_d(a,b,c;h) with a + b + 2c = 3d - 3.
template <InvariantLookup L>
Rational eval_1134(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, a = key.a, b = key.b, c = key.c;
  auto tangency = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = 2 * d1 * d2 * d2 * binom(b, b1 - 1) - 2 * d1 * d1 * d2 * binom(b, b1);
    return k * binom(a, a1) * binom(c, c1);
  };
  auto line = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = (t == Transcription::literal)
                        ? 2 * d2 * binom(b, b1 - 1) - 2 * d1 * d1 * d2 * binom(b, b1)
                        : 2 * d2 * d2 * binom(b, b1 - 1) - 2 * d1 * d2 * binom(b, b1);
    return k * binom(a, a1 - 1) * binom(c, c1);
  };
  Rational inner = Rational(std::int64_t{d} * (2 * d - 2)) * detail::lookup_n(lk, d, a, b, c + 1);
  inner += Rational(2 - d) * detail::lookup_n(lk, d, a + 1, b + 1, c);
  inner += Rational(d) * detail::lookup_n(lk, d, a, b + 2, c);
  inner += detail::pair_sum(lk, d, a, b + 1, c, CondClass::hv2, tangency);
  inner += detail::pair_sum(lk, d, a + 1, b + 1, c, CondClass::hv, line);
  Rational r = -Rational(b) * detail::lookup_cusp(lk, d, a, b - 1, c, CondClass::h2);
  return r + inner / Rational(std::int64_t{d} * d);
}

/// 1133: C_d(a,b,c;1) with a + b + 2c = 3d - 2.
template <InvariantLookup L>
Rational eval_1133(const InvariantKey& key, L& lk, Transcription t = Transcription::rederived) {
  using detail::binom;
  using detail::Count;
  const int d = key.d, a = key.a, b = key.b, c = key.c;
  auto tangency = [&](int d1, int d2, int a1, int b1, int c1) -> Count {
    const Count k = (t == Transcription::literal) ? Count(d1) * d2 : Count(d1) * d2 * d2;
    return k * binom(a, a1) * binom(b, b1) * binom(c, c1);
  };
  auto line = [&](int, int d2, int a1, int b1, int c1) -> Count {
    return Count(d2) * d2 * binom(a, a1 - 1) * binom(b, b1) * binom(c, c1);
  };
  Rational inner = Rational(4 * (d - 1)) * detail::lookup_n(lk, d, a + 1, b, c);
  inner += Rational(std::int64_t{3} * d * d - 4 * d) * detail::lookup_n(lk, d, a, b + 1, c);
  inner -= Rational(4) * detail::pair_sum(lk, d, a, b, c, CondClass::hv2, tangency);
  inner -= Rational(4) * detail::pair_sum(lk, d, a + 1, b, c, CondClass::hv, line);
  Rational r = -Rational(b) * detail::lookup_cusp(lk, d, a, b - 1, c, CondClass::h);
  r -= Rational(c) * detail::lookup_cusp(lk, d, a, b, c - 1, CondClass::h2);
  r -= binomial(b, 2) * detail::lookup_cusp(lk, d, a, b - 2, c, CondClass::h2);
  return r + inner / Rational(std::int64_t{d} * d);
}

/// Runs `id` on `key` with the transcription chosen by `set`.
template <InvariantLookup L>
Rational evaluate(EquationId id, const InvariantKey& key, L& lk, const EquationSet& set = EquationSet::reference()) {
  const Transcription t = (id == EquationId::base) ? Transcription::rederived : set.of(id);
  switch (id) {
    case EquationId::e1122a: return eval_1122a(key, lk, t);
    case EquationId::e1122b: return eval_1122b(key, lk, t);
    case EquationId::e1155: return eval_1155(key, lk, t);
    case EquationId::e1123a: return eval_1123a(key, lk, t);
    case EquationId::e1123b: return eval_1123b(key, lk, t);
    case EquationId::e2245: return eval_2245(key, lk, t);
    case EquationId::e1144: return eval_1144(key, lk, t);
    case EquationId::e1134: return eval_1134(key, lk, t);
    case EquationId::e1133: return eval_1133(key, lk, t);
    case EquationId::base: break;
  }
  throw std::invalid_argument("evaluate: base cases have no equation");
}

}  // namespace charnum

#endif  // CHARNUM_EQUATIONS_HPP
