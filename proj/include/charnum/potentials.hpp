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

// Closed-form potentials of the incidence correspondence and the two product
// identities that produce the degree-2 cuspidal values and the E invariants.
//
// Variables: y_s pairs with the insertion class T_s, z_s with the special
// marked-point class T_s. In N and E, y2, y4, y5 count point (a), tangency (b)
// and flag (c) conditions.

#ifndef CHARNUM_POTENTIALS_HPP
#define CHARNUM_POTENTIALS_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "charnum/invariant.hpp"
#include "charnum/rational.hpp"
#include "charnum/series.hpp"

namespace charnum {

/// y0^2 y5/2 + y0 y1 y4 + y0 y2 y3 + y1^2 y3/2 + y1 y3^2/2.
inline TruncatedSeries classical_potential(int truncation = 16) {
  TruncatedSeries p(truncation);
  const ExpMarker none{0, 0};
  p.add(term(none, {{Var::y0, 2}, {Var::y5, 1}}), Rational(1, 2));
  p.add(term(none, {{Var::y0, 1}, {Var::y1, 1}, {Var::y4, 1}}), Rational(1));
  p.add(term(none, {{Var::y0, 1}, {Var::y2, 1}, {Var::y3, 1}}), Rational(1));
  p.add(term(none, {{Var::y1, 2}, {Var::y3, 1}}), Rational(1, 2));
  p.add(term(none, {{Var::y1, 1}, {Var::y3, 2}}), Rational(1, 2));
  return p;
}

/// Degree-1 maps to a fiber over the plane: (y4^2/2 + y5) exp(y3).
inline TruncatedSeries fiber_potential(int truncation = 16) {
  TruncatedSeries f(truncation);
  const ExpMarker m{0, 1};
  f.add(term(m, {{Var::y4, 2}}), Rational(1, 2));
  f.add(term(m, {{Var::y5, 1}}), Rational(1));
  return f;
}

/// Double covers of a fiber over the plane with two marked ramification points.
inline TruncatedSeries ramified_potential_r(int truncation = 16) {
  TruncatedSeries r(truncation);
  const ExpMarker m{0, 2};
  r.add(term(m, {{Var::z3, 2}, {Var::y4, 2}}), Rational(1, 2));
  r.add(term(m, {{Var::z3, 2}, {Var::y5, 1}}), Rational(1, 2));
  r.add(term(m, {{Var::z3, 1}, {Var::z4, 1}, {Var::y4, 1}}), Rational(1));
  r.add(term(m, {{Var::z3, 1}, {Var::z5, 1}}), Rational(1, 2));
  r.add(term(m, {{Var::z4, 2}}), Rational(1, 4));
  return r;
}

/// The same over the dual plane, marker exp(2 y1).
inline TruncatedSeries ramified_potential_l(int truncation = 16) {
  TruncatedSeries l(truncation);
  const ExpMarker m{2, 0};
  l.add(term(m, {{Var::z1, 2}, {Var::y2, 2}}), Rational(1, 2));
  l.add(term(m, {{Var::z1, 2}, {Var::y5, 1}}), Rational(1, 2));
  l.add(term(m, {{Var::z1, 1}, {Var::z2, 1}, {Var::y2, 1}}), Rational(1));
  l.add(term(m, {{Var::z1, 1}, {Var::z5, 1}}), Rational(1, 2));
  l.add(term(m, {{Var::z2, 2}}), Rational(1, 4));
  return l;
}

inline std::pair<TruncatedSeries, TruncatedSeries> ramified_potentials(int truncation = 16) {
  return {ramified_potential_r(truncation), ramified_potential_l(truncation)};
}

/// R(a,b,c; T_i · T_j) with i <= j.
struct RamifiedKey {
  int a = 0, b = 0, c = 0;
  CondClass first = CondClass::one;
  CondClass second = CondClass::one;
  friend auto operator<=>(const RamifiedKey&, const RamifiedKey&) = default;
};

/// Reads the invariants R(a,b,c;T_i·T_j) off a potential of the shape of R.
///
/// The potential weights each invariant by 1/(2·a!b!c!) and sums over ordered
/// pairs of marked classes, so for i != j the monomial z_i z_j collects the
/// invariant twice:
///   R(a,b,c;T_i·T_j) = coefficient · a!b!c! · 2 / (i == j ? 1 : 2).
inline std::map<RamifiedKey, Rational> ramified_invariants(const TruncatedSeries& r) {
  std::map<RamifiedKey, Rational> out;
  for (const auto& [t, v] : r.terms()) {
    std::vector<int> marks;
    for (int s = 0; s < 6; ++s) {
      for (int k = 0; k < t.exps[static_cast<std::size_t>(z(s))]; ++k) marks.push_back(s);
    }
    if (marks.size() != 2) throw std::invalid_argument("ramified_invariants: term without two marked points");
    const int a = t.exps[2], b = t.exps[4], c = t.exps[5];
    const int mult = marks[0] == marks[1] ? 1 : 2;
    Rational value = v * factorial(a) * factorial(b) * factorial(c) * Rational(2) / Rational(mult);
    out.emplace(RamifiedKey{a, b, c, class_from_index(marks[0]), class_from_index(marks[1])}, value);
  }
  return out;
}

/// Inverse of ramified_invariants for the fiber over the plane (marker exp(2 y3)).
inline TruncatedSeries ramified_potential_from_invariants(const std::map<RamifiedKey, Rational>& inv,
                                                          int truncation = 16) {
  TruncatedSeries r(truncation);
  for (const auto& [k, v] : inv) {
    const int mult = k.first == k.second ? 1 : 2;
    const Rational coef =
        v * Rational(mult) / (Rational(2) * factorial(k.a) * factorial(k.b) * factorial(k.c));
    r.add(term({0, 2}, {{Var::y2, k.a},
                        {Var::y4, k.b},
                        {Var::y5, k.c},
                        {z(index(k.first)), 1},
                        {z(index(k.second)), 1}}),
          coef);
  }
  return r;
}

/// Degree <= max_d part of the N potential: Σ N_e(a,b,c) y2^a y4^b y5^c / (a!b!c!) at marker (e, 2e-2).
template <class LookupN>
TruncatedSeries n_potential(int max_d, LookupN&& lookup_n, int truncation) {
  TruncatedSeries n(truncation);
  for (int e = 1; e <= max_d; ++e) {
    const int budget = 3 * e - 1;
    for (int c = 0; 2 * c <= budget; ++c) {
      for (int a = 0; a + 2 * c <= budget; ++a) {
        const int b = budget - a - 2 * c;
        Rational v = lookup_n(e, a, b, c);
        if (v.is_zero()) continue;
        v /= factorial(a) * factorial(b) * factorial(c);
        n.add(term({e, 2 * e - 2}, {{Var::y2, a}, {Var::y4, b}, {Var::y5, c}}), v);
      }
    }
  }
  return n;
}

/// C_2(a,b,c;T_s), keyed (a,b,c,s).
using CuspKey = std::tuple<int, int, int, CondClass>;

/// The degree-2 cuspidal potential as Σ_s ∂L/∂z_s · ∂F/∂y_{5-s}.
inline TruncatedSeries ctwo_potential(int truncation = 16) {
  const TruncatedSeries l = ramified_potential_l(truncation);
  const TruncatedSeries f = fiber_potential(truncation);
  TruncatedSeries out(truncation);
  for (int s = 0; s < 6; ++s) out += l.derivative(z(s)) * f.derivative(y(5 - s));
  return out;
}

/// Nonzero C_2 values: a!b!c! times the coefficient of z_s y2^a y4^b y5^c at marker (2,1).
inline std::map<CuspKey, Rational> ctwo_from_potentials() {
  std::map<CuspKey, Rational> out;
  const TruncatedSeries product = ctwo_potential();
  for (const auto& [t, v] : product.terms()) {
    int s = -1;
    int marks = 0;
    for (int i = 0; i < 6; ++i) {
      const int p = t.exps[static_cast<std::size_t>(z(i))];
      marks += p;
      if (p == 1) s = i;
    }
    const bool other_y = t.exps[0] || t.exps[1] || t.exps[3];
    if (marks != 1 || s < 0 || other_y || t.marker.m != 2 || t.marker.n != 1) {
      throw std::logic_error("ctwo_from_potentials: unexpected term shape");
    }
    const int a = t.exps[2], b = t.exps[4], c = t.exps[5];
    out.emplace(CuspKey{a, b, c, class_from_index(s)}, v * factorial(a) * factorial(b) * factorial(c));
  }
  return out;
}

struct EpotMismatch {
  InvariantKey key;
  Rational from_potential;
  Rational from_reduction;
};

struct EpotReport {
  int degree = 0;
  std::size_t coefficients_checked = 0;
  std::optional<EpotMismatch> first_mismatch;
  std::string problem;  ///< set when the product contains a term of unexpected shape

  bool ok() const { return !first_mismatch && problem.empty(); }

  std::string describe() const {
    std::ostringstream os;
    os << "degree " << degree << ": " << coefficients_checked << " coefficients";
    if (!problem.empty()) os << "; " << problem;
    if (first_mismatch) {
      os << "; mismatch at " << first_mismatch->key << ": potential " << first_mismatch->from_potential
         << ", reduction " << first_mismatch->from_reduction;
    }
    return os.str();
  }
};

/// Checks Σ_s ∂N/∂y_s · ∂R/∂z_{5-s} against e_from_n for every E_e(a,b,c;T_s), e <= d.
/// Every valid E key is compared, including those whose coefficient is zero.
template <class LookupN>
EpotReport check_epot(int d, LookupN&& lookup_n) {
  EpotReport report;
  report.degree = d;
  const int truncation = 3 * d + 2;
  const TruncatedSeries n = n_potential(d, lookup_n, truncation);
  const TruncatedSeries r = ramified_potential_r(truncation);
  TruncatedSeries e(truncation);
  for (int s = 0; s < 6; ++s) e += n.derivative(y(s)) * r.derivative(z(5 - s));

  std::map<InvariantKey, Rational> extracted;
  for (const auto& [t, v] : e.terms()) {
    int s = -1;
    int marks = 0;
    for (int i = 0; i < 6; ++i) {
      const int p = t.exps[static_cast<std::size_t>(z(i))];
      marks += p;
      if (p == 1) s = i;
    }
    const int deg = t.marker.m;
    if (marks != 1 || s < 0 || t.exps[0] || t.exps[1] || t.exps[3] || deg < 1 || deg > d ||
        t.marker.n != 2 * deg) {
      report.problem = "unexpected term " + TruncatedSeries(truncation).add(t, v).to_string();
      return report;
    }
    const int a = t.exps[2], b = t.exps[4], c = t.exps[5];
    extracted[InvariantKey::e(deg, a, b, c, class_from_index(s))] =
        v * factorial(a) * factorial(b) * factorial(c);
  }

  std::map<InvariantKey, Rational> expected;
  for (int deg = 1; deg <= d; ++deg) {
    for (CondClass s : kAllClasses) {
      const int budget = 3 * deg + 1 - codim(s);
      for (int c = 0; 2 * c <= budget; ++c) {
        for (int a = 0; a + 2 * c <= budget; ++a) {
          const InvariantKey k = InvariantKey::e(deg, a, budget - a - 2 * c, c, s);
          expected[k] = e_from_n(deg, k.a, k.b, k.c, s, lookup_n);
        }
      }
    }
  }
  for (const auto& [k, v] : extracted) expected.try_emplace(k, Rational(0));

  for (const auto& [k, want] : expected) {
    ++report.coefficients_checked;
    auto it = extracted.find(k);
    const Rational got = it == extracted.end() ? Rational(0) : it->second;
    if (got != want) {
      report.first_mismatch = EpotMismatch{k, got, want};
      return report;
    }
  }
  return report;
}

}  // namespace charnum

#endif  // CHARNUM_POTENTIALS_HPP
