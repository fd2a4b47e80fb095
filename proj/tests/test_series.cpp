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

#include <gtest/gtest.h>

#include "charnum/series.hpp"

namespace charnum {
namespace {

TruncatedSeries sample(int truncation = 8) {
  TruncatedSeries s(truncation);
  s.add(term({1, 0}, {{Var::y2, 2}}), Rational(1, 2));
  s.add(term({0, 1}, {{Var::y4, 1}, {Var::z3, 1}}), Rational(3));
  s.add(term({0, 0}, {{Var::y0, 1}}), Rational(-1));
  return s;
}

TEST(Series, ZeroCoefficientsAreNotStored) {
  TruncatedSeries s(4);
  const SeriesTerm t = term({0, 0}, {{Var::y2, 1}});
  s.add(t, Rational(2));
  s.add(t, Rational(-2));
  EXPECT_TRUE(s.empty());
  s.add(t, Rational(0));
  EXPECT_TRUE(s.empty());
}

TEST(Series, TruncationDropsHighDegreeTerms) {
  TruncatedSeries s(2);
  s.add(term({0, 0}, {{Var::y2, 3}}), Rational(1));
  EXPECT_TRUE(s.empty());
  TruncatedSeries x(2);
  x.add(term({0, 0}, {{Var::y2, 1}}), Rational(1));
  EXPECT_EQ((x * x).size(), 1u);
  EXPECT_TRUE((x * x * x).empty());
}

TEST(Series, MultiplicationAddsMarkers) {
  TruncatedSeries a(6);
  TruncatedSeries b(6);
  a.add(term({2, 0}, {{Var::z1, 1}}), Rational(1, 2));
  b.add(term({0, 1}, {{Var::y4, 1}}), Rational(2));
  const TruncatedSeries p = a * b;
  EXPECT_EQ(p.coefficient(term({2, 1}, {{Var::z1, 1}, {Var::y4, 1}})), Rational(1));
  EXPECT_EQ(p.size(), 1u);
}

TEST(Series, CommutativeAndAssociative) {
  const TruncatedSeries a = sample();
  TruncatedSeries b(8);
  b.add(term({0, 2}, {{Var::y5, 1}}), Rational(2, 3));
  b.add(term({0, 0}, {{Var::y2, 1}, {Var::y4, 1}}), Rational(1));
  TruncatedSeries c(8);
  c.add(term({1, 1}, {}), Rational(5));
  c.add(term({0, 0}, {{Var::z4, 2}}), Rational(1, 4));
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ((a * b) * c, a * (b * c));
  EXPECT_EQ(a * (b + c), a * b + a * c);
}

TEST(Series, MarkerDerivativeRule) {
  TruncatedSeries s(8);
  s.add(term({3, 4}, {{Var::y1, 2}, {Var::y2, 1}}), Rational(1));
  const TruncatedSeries d1 = s.derivative(Var::y1);
  // d/dy1 (y1^2 y2 e^{3y1+4y3}) = 2 y1 y2 e^{..} + 3 y1^2 y2 e^{..}
  EXPECT_EQ(d1.coefficient(term({3, 4}, {{Var::y1, 1}, {Var::y2, 1}})), Rational(2));
  EXPECT_EQ(d1.coefficient(term({3, 4}, {{Var::y1, 2}, {Var::y2, 1}})), Rational(3));
  const TruncatedSeries d3 = s.derivative(Var::y3);
  EXPECT_EQ(d3.coefficient(term({3, 4}, {{Var::y1, 2}, {Var::y2, 1}})), Rational(4));
  EXPECT_EQ(d3.size(), 1u);
  const TruncatedSeries d2 = s.derivative(Var::y2);
  EXPECT_EQ(d2.coefficient(term({3, 4}, {{Var::y1, 2}})), Rational(1));
  EXPECT_TRUE(s.derivative(Var::z0).empty());
}

TEST(Series, DerivativesCommute) {
  TruncatedSeries s = sample();
  s.add(term({2, 3}, {{Var::y1, 1}, {Var::y3, 2}, {Var::z4, 1}}), Rational(7));
  const Var vars[] = {Var::y0, Var::y1, Var::y2, Var::y3, Var::y4, Var::z3, Var::z4};
  for (Var u : vars) {
    for (Var v : vars) EXPECT_EQ(s.derivative(u).derivative(v), s.derivative(v).derivative(u));
  }
}

TEST(Series, LeibnizRule) {
  const TruncatedSeries a = sample();
  TruncatedSeries b(8);
  b.add(term({0, 2}, {{Var::y3, 1}, {Var::y4, 2}}), Rational(1, 2));
  for (Var v : {Var::y1, Var::y3, Var::y4}) {
    EXPECT_EQ((a * b).derivative(v), a.derivative(v) * b + a * b.derivative(v));
  }
}

TEST(Series, ScalarMultiple) {
  const TruncatedSeries a = sample();
  EXPECT_EQ(Rational(2) * a, a + a);
  EXPECT_TRUE((Rational(0) * a).empty());
  EXPECT_TRUE((a - a).empty());
}

TEST(Series, IndexHelpersRejectOutOfRange) {
  EXPECT_THROW(y(6), std::out_of_range);
  EXPECT_THROW(z(-1), std::out_of_range);
  EXPECT_THROW(TruncatedSeries(-1), std::invalid_argument);
}

}  // namespace
}  // namespace charnum
