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

// Domain model: condition classes on the incidence correspondence, invariant
// keys, the dimension rule each family obeys, the degree-1 and degree-2 base
// values, and the reduction of ramification invariants E to N.

#ifndef CHARNUM_INVARIANT_HPP
#define CHARNUM_INVARIANT_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

#include "charnum/rational.hpp"

namespace charnum {

/// Basis class T_0..T_5 = {1, h, h^2, ȟ, ȟ^2, h^2 ȟ} of the cohomology of the
/// point-line incidence correspondence.
enum class CondClass : std::uint8_t {
  one = 0,       // T_0
  h = 1,         // T_1, point on a given line
  h2 = 2,        // T_2, point condition
  hv = 3,        // T_3, ȟ: tangent line through a given point
  hv2 = 4,       // T_4, ȟ^2: tangency condition
  h2hv = 5,      // T_5, h^2 ȟ: flag condition
};

inline constexpr std::array<CondClass, 6> kAllClasses = {
    CondClass::one, CondClass::h, CondClass::h2, CondClass::hv, CondClass::hv2, CondClass::h2hv};

constexpr int index(CondClass s) { return static_cast<int>(s); }

constexpr CondClass class_from_index(int i) {
  if (i < 0 || i > 5) throw std::out_of_range("condition class index must be in 0..5");
  return static_cast<CondClass>(i);
}

constexpr int codim(CondClass s) {
  constexpr std::array<int, 6> kCodim = {0, 1, 2, 1, 2, 3};
  return kCodim[static_cast<std::size_t>(s)];
}

/// Pairing partner under the diagonal decomposition [Δ] = Σ T_s × T_{5-s}.
constexpr CondClass dual(CondClass s) { return class_from_index(5 - index(s)); }

inline std::string_view class_name(CondClass s) {
  constexpr std::array<std::string_view, 6> kNames = {"1", "h", "h2", "hv", "hv2", "h2hv"};
  return kNames[static_cast<std::size_t>(s)];
}

/// Accepts the short names printed by class_name() and T0..T5.
inline std::optional<CondClass> parse_class(std::string_view text) {
  for (CondClass s : kAllClasses) {
    if (text == class_name(s)) return s;
  }
  if (text.size() == 2 && (text[0] == 'T' || text[0] == 't') && text[1] >= '0' && text[1] <= '5') {
    return class_from_index(text[1] - '0');
  }
  return std::nullopt;
}

enum class Family : std::uint8_t { N = 0, C = 1, E = 2 };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::N: return "N";
    case Family::C: return "C";
    case Family::E: return "E";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view text) {
  if (text == "N") return Family::N;
  if (text == "C") return Family::C;
  if (text == "E") return Family::E;
  return std::nullopt;
}

/// Memoization key. `cls` is present exactly for the C and E families.
struct InvariantKey {
  Family family = Family::N;
  int d = 1;
  int a = 0;
  int b = 0;
  int c = 0;
  std::optional<CondClass> cls;

  static InvariantKey n(int d, int a, int b, int c) { return {Family::N, d, a, b, c, std::nullopt}; }
  static InvariantKey cusp(int d, int a, int b, int c, CondClass s) { return {Family::C, d, a, b, c, s}; }
  static InvariantKey e(int d, int a, int b, int c, CondClass s) { return {Family::E, d, a, b, c, s}; }

  friend bool operator==(const InvariantKey&, const InvariantKey&) = default;

  /// Canonical order: (family, d, class, a, c, b). Cache files depend on it.
  friend std::strong_ordering operator<=>(const InvariantKey& x, const InvariantKey& y) {
    auto tie = [](const InvariantKey& k) {
      return std::make_tuple(static_cast<int>(k.family), k.d, k.cls ? index(*k.cls) : -1, k.a, k.c, k.b);
    };
    return tie(x) <=> tie(y);
  }

  std::string to_string() const {
    std::ostringstream os;
    os << family_name(family) << "_" << d << "(" << a << "," << b << "," << c;
    if (cls) os << ";" << class_name(*cls);
    os << ")";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const InvariantKey& k) { return os << k.to_string(); }
};

struct InvariantKeyHash {
  std::size_t operator()(const InvariantKey& k) const noexcept {
    std::uint64_t h = static_cast<std::uint64_t>(k.family);
    h = h * 64 + static_cast<std::uint64_t>(k.cls ? index(*k.cls) + 1 : 0);
    h = h * 1024 + static_cast<std::uint64_t>(k.d & 1023);
    h = h * 1024 + static_cast<std::uint64_t>(k.a & 1023);
    h = h * 1024 + static_cast<std::uint64_t>(k.b & 1023);
    h = h * 1024 + static_cast<std::uint64_t>(k.c & 1023);
    return std::hash<std::uint64_t>{}(h * 0x9E3779B97F4A7C15ULL);
  }
};

/// Value of a + b + 2c that a nonzero invariant of this family, degree and class requires.
inline int dimension_budget(Family f, int d, std::optional<CondClass> s) {
  switch (f) {
    case Family::N: return 3 * d - 1;
    case Family::C: return 3 * d - 2 - codim(s.value());
    case Family::E: return 3 * d + 1 - codim(s.value());
  }
  return -1;
}

/// True when the key may carry a nonzero value. Everything else evaluates to 0.
inline bool is_valid(const InvariantKey& k) {
  if (k.a < 0 || k.b < 0 || k.c < 0) return false;
  const int weight = k.a + k.b + 2 * k.c;
  switch (k.family) {
    case Family::N:
      return !k.cls && k.d >= 1 && weight == 3 * k.d - 1;
    case Family::C:
      return k.cls && k.d >= 2 && weight == dimension_budget(Family::C, k.d, k.cls);
    case Family::E:
      // E against 1, h, h^2 vanishes identically.
      return k.cls && k.d >= 1 && index(*k.cls) >= 3 &&
             weight == dimension_budget(Family::E, k.d, k.cls);
  }
  return false;
}

/// Human-readable statement of the dimension rule, for diagnostics.
inline std::string validity_rule(Family f, std::optional<CondClass> s) {
  switch (f) {
    case Family::N: return "N_d(a,b,c) needs d >= 1 and a+b+2c = 3d-1";
    case Family::C:
      return "C_d(a,b,c;" + std::string(s ? class_name(*s) : "s") + ") needs d >= 2 and a+b+2c = 3d-2-codim(s) = 3d-" +
             std::to_string(2 + (s ? codim(*s) : 0));
    case Family::E:
      return "E_d(a,b,c;s) needs d >= 1, s in {hv, hv2, h2hv} and a+b+2c = 3d+1-codim(s)";
  }
  return {};
}

/// The eight nonzero degree-2 cuspidal values; all other valid C_2 keys are 0.
inline const std::map<InvariantKey, Rational>& cuspidal_conic_values() {
  static const std::map<InvariantKey, Rational> kValues = {
      {InvariantKey::cusp(2, 2, 1, 0, CondClass::h), Rational(2)},
      {InvariantKey::cusp(2, 0, 1, 1, CondClass::h), Rational(1)},
      {InvariantKey::cusp(2, 1, 2, 0, CondClass::h), Rational(1)},
      {InvariantKey::cusp(2, 1, 0, 1, CondClass::h), Rational(1)},
      {InvariantKey::cusp(2, 1, 1, 0, CondClass::h2), Rational(1)},
      {InvariantKey::cusp(2, 0, 2, 0, CondClass::h2), Rational(1, 2)},
      {InvariantKey::cusp(2, 0, 0, 1, CondClass::h2), Rational(1, 2)},
      {InvariantKey::cusp(2, 0, 1, 0, CondClass::h2hv), Rational(1, 2)},
  };
  return kValues;
}

/// Hard-coded value for base-case keys (every valid N_1 and C_2 key); nullopt otherwise.
inline std::optional<Rational> base_value(const InvariantKey& k) {
  if (!is_valid(k)) return std::nullopt;
  if (k.family == Family::N && k.d == 1) {
    const bool one = (k.a == 2 && k.b == 0 && k.c == 0) || (k.a == 0 && k.b == 0 && k.c == 1);
    return Rational(one ? 1 : 0);
  }
  if (k.family == Family::C && k.d == 2) {
    const auto& table = cuspidal_conic_values();
    auto it = table.find(k);
    return it == table.end() ? Rational(0) : it->second;
  }
  return std::nullopt;
}

/// E_d(a,b,c;s) expressed through N_d. `lookup_n(d,a,b,c)` supplies N values; it is
/// only ever asked for keys with nonnegative entries that satisfy the N dimension rule.
template <class LookupN>
Rational e_from_n(int d, int a, int b, int c, CondClass s, LookupN&& lookup_n) {
  if (!is_valid(InvariantKey::e(d, a, b, c, s))) return Rational(0);
  auto n = [&](int aa, int bb, int cc) -> Rational {
    if (!is_valid(InvariantKey::n(d, aa, bb, cc))) return Rational(0);
    return lookup_n(d, aa, bb, cc);
  };
  Rational r;
  switch (s) {
    case CondClass::hv:
      if (b >= 1) r += Rational(std::int64_t{d} * b) * n(a, b - 1, c);
      if (b >= 2) r += Rational(std::int64_t{b} * (b - 1)) * n(a + 1, b - 2, c);
      if (c >= 1) r += Rational(c) * n(a + 1, b, c - 1);
      break;
    case CondClass::hv2:
      r += Rational(d, 2) * n(a, b, c);
      if (b >= 1) r += Rational(b) * n(a + 1, b - 1, c);
      break;
    case CondClass::h2hv:
      r += Rational(1, 2) * n(a + 1, b, c);
      break;
    default:
      break;
  }
  return r;
}

/// One (family, degree, class) table laid out as rows c, columns a; b is implied.
struct InvariantTable {
  Family family = Family::N;
  int d = 1;
  std::optional<CondClass> cls;
  std::map<std::pair<int, int>, Rational> entries;  // (a, c) -> value

  int budget() const { return dimension_budget(family, d, cls); }
  int b_of(int a, int c) const { return budget() - a - 2 * c; }
  int max_c() const { return budget() / 2; }
  int max_a(int c) const { return budget() - 2 * c; }

  InvariantKey key(int a, int c) const { return {family, d, a, b_of(a, c), c, cls}; }

  /// Every (a, c) with a, c >= 0 and a + 2c <= budget, rows in ascending c then a.
  template <class Fn>
  void for_each_cell(Fn&& fn) const {
    for (int c = 0; c <= max_c(); ++c) {
      for (int a = 0; a <= max_a(c); ++a) fn(a, c);
    }
  }

  std::size_t cell_count() const {
    std::size_t n = 0;
    for_each_cell([&](int, int) { ++n; });
    return n;
  }

  bool complete() const {
    bool ok = true;
    for_each_cell([&](int a, int c) { ok = ok && entries.count({a, c}) == 1; });
    return ok && entries.size() == cell_count();
  }
};

}  // namespace charnum

#endif  // CHARNUM_INVARIANT_HPP
