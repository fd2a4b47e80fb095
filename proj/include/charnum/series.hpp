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

#ifndef CHARNUM_SERIES_HPP
#define CHARNUM_SERIES_HPP

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "charnum/rational.hpp"

namespace charnum {

/// Variables of the series ring: y0..y5 then z0..z5.
enum class Var : std::uint8_t { y0, y1, y2, y3, y4, y5, z0, z1, z2, z3, z4, z5 };

constexpr Var y(int s) {
  if (s < 0 || s > 5) throw std::out_of_range("y index must be in 0..5");
  return static_cast<Var>(s);
}
constexpr Var z(int s) {
  if (s < 0 || s > 5) throw std::out_of_range("z index must be in 0..5");
  return static_cast<Var>(6 + s);
}

/// Formal factor exp(m*y1 + n*y3).
struct ExpMarker {
  int m = 0;
  int n = 0;
  friend auto operator<=>(const ExpMarker&, const ExpMarker&) = default;
};

using Exponents = std::array<std::uint8_t, 12>;

/// A monomial times an exponential marker.
struct SeriesTerm {
  ExpMarker marker;
  Exponents exps{};

  int degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }
  friend auto operator<=>(const SeriesTerm&, const SeriesTerm&) = default;
};

/// Builds a term from (variable, power) pairs.
inline SeriesTerm term(ExpMarker marker, std::initializer_list<std::pair<Var, int>> powers = {}) {
  SeriesTerm t{marker, {}};
  for (auto [v, p] : powers) {
    if (p < 0 || p > 255) throw std::out_of_range("exponent out of range");
    t.exps[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(t.exps[static_cast<std::size_t>(v)] + p);
  }
  return t;
}

/// Exact polynomial in y0..y5, z0..z5 with exp(m*y1 + n*y3) gradings, truncated
/// at a maximum total monomial degree.
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int truncation = 16) : truncation_(truncation) {
    if (truncation < 0) throw std::invalid_argument("truncation must be nonnegative");
  }

  int truncation() const { return truncation_; }
  const std::map<SeriesTerm, Rational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds `value` to the coefficient of `t`; drops it above the truncation.
  TruncatedSeries& add(const SeriesTerm& t, const Rational& value) {
    if (value.is_zero() || t.degree() > truncation_) return *this;
    auto [it, fresh] = terms_.try_emplace(t, value);
    if (!fresh) {
      it->second += value;
      if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
  }

  Rational coefficient(const SeriesTerm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  TruncatedSeries with_truncation(int truncation) const {
    TruncatedSeries r(truncation);
    for (const auto& [t, v] : terms_) r.add(t, v);
    return r;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    for (const auto& [t, v] : o.terms_) add(t, v);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    for (const auto& [t, v] : o.terms_) add(t, -v);
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator*(const Rational& k, const TruncatedSeries& s) {
    TruncatedSeries r(s.truncation_);
    if (k.is_zero()) return r;
    for (const auto& [t, v] : s.terms_) r.terms_.emplace(t, k * v);
    return r;
  }

  /// Product; markers add, the result is truncated at the smaller bound.
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.truncation_, b.truncation_));
    for (const auto& [ta, va] : a.terms_) {
      const int da = ta.degree();
      for (const auto& [tb, vb] : b.terms_) {
        if (da + tb.degree() > r.truncation_) continue;
        SeriesTerm t{{ta.marker.m + tb.marker.m, ta.marker.n + tb.marker.n}, {}};
        for (std::size_t i = 0; i < t.exps.size(); ++i) {
          const int e = ta.exps[i] + tb.exps[i];
          if (e > 255) throw std::overflow_error("series exponent overflow");
          t.exps[i] = static_cast<std::uint8_t>(e);
        }
        r.add(t, va * vb);
      }
    }
    return r;
  }

  /// Partial derivative. For y1 and y3 the marker contributes m (resp. n) times the term.
  TruncatedSeries derivative(Var v) const {
    const auto i = static_cast<std::size_t>(v);
    TruncatedSeries r(truncation_);
    for (const auto& [t, val] : terms_) {
      const int p = t.exps[i];
      if (p > 0) {
        SeriesTerm u = t;
        u.exps[i] = static_cast<std::uint8_t>(p - 1);
        r.add(u, Rational(p) * val);
      }
      int weight = 0;
      if (v == Var::y1) weight = t.marker.m;
      if (v == Var::y3) weight = t.marker.n;
      if (weight != 0) r.add(t, Rational(weight) * val);
    }
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    static constexpr std::array<const char*, 12> kNames = {"y0", "y1", "y2", "y3", "y4", "y5",
                                                           "z0", "z1", "z2", "z3", "z4", "z5"};
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, v] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << v << ")";
      for (std::size_t i = 0; i < t.exps.size(); ++i) {
        if (t.exps[i] == 1) os << "*" << kNames[i];
        if (t.exps[i] > 1) os << "*" << kNames[i] << "^" << int(t.exps[i]);
      }
      if (t.marker.m || t.marker.n) os << "*exp(" << t.marker.m << "y1+" << t.marker.n << "y3)";
    }
    return first ? "0" : os.str();
  }

 private:
  int truncation_;
  std::map<SeriesTerm, Rational> terms_;
};

}  // namespace charnum

#endif  // CHARNUM_SERIES_HPP
