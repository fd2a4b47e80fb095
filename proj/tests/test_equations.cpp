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

#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "charnum/engine.hpp"
#include "charnum/equations.hpp"
#include "charnum/golden.hpp"

namespace charnum {
namespace {

// Serves N and C values from the reference tables (with declared errata
// applied) and falls back to the engine for keys outside them.
class TableLookup {
 public:
  explicit TableLookup(bool apply_errata = true) : engine_(EngineConfig{7, 5, EquationSet::reference()}) {
    for (const auto& fx : load_fixtures(CHARNUM_FIXTURE_DIR)) {
      for (const auto& e : fx.entries) {
        const Erratum* er = apply_errata ? fx.erratum_at(e.a, e.c) : nullptr;
        values_[fx.key(e)] = er ? er->value : e.value;
      }
    }
  }

  Rational n(int d, int a, int b, int c) { return get(InvariantKey::n(d, a, b, c)); }
  Rational cusp(int d, int a, int b, int c, CondClass s) { return get(InvariantKey::cusp(d, a, b, c, s)); }

  const std::map<InvariantKey, Rational>& values() const { return values_; }
  void set(const InvariantKey& k, const Rational& v) { values_[k] = v; }

 private:
  Rational get(const InvariantKey& k) {
    auto it = values_.find(k);
    return it != values_.end() ? it->second : engine_.compute(k);
  }

  Engine engine_;
  std::map<InvariantKey, Rational> values_;
};

static_assert(InvariantLookup<TableLookup>);
static_assert(InvariantLookup<Evaluator<MemoStore>>);

EquationId equation_of(const InvariantKey& k) { return Evaluator<MemoStore>::equation_for(k); }

TEST(Dispatch, CascadeExamples) {
  EXPECT_EQ(dispatch(InvariantKey::n(3, 4, 4, 0)), EquationId::e1122a);
  EXPECT_EQ(dispatch(InvariantKey::n(2, 0, 3, 1)), EquationId::e2245);
  EXPECT_EQ(dispatch(InvariantKey::n(4, 0, 11, 0)), EquationId::e1122b);
  EXPECT_EQ(dispatch(InvariantKey::n(3, 3, 1, 2)), EquationId::e1122a);
  EXPECT_EQ(dispatch(InvariantKey::n(3, 1, 1, 3)), EquationId::e1155);
  EXPECT_EQ(dispatch(InvariantKey::n(3, 0, 2, 3)), EquationId::e1123a);
  EXPECT_EQ(dispatch(InvariantKey::n(3, 3, 5, 0)), EquationId::e1123b);
}

TEST(Dispatch, RejectsKeysOutsideItsDomain) {
  EXPECT_THROW(dispatch(InvariantKey::n(1, 2, 0, 0)), std::invalid_argument);
  EXPECT_THROW(dispatch(InvariantKey::n(2, 3, 3, 0)), std::invalid_argument);
  EXPECT_THROW(dispatch(InvariantKey::cusp(3, 5, 0, 0, CondClass::h2)), std::invalid_argument);
}

TEST(Dispatch, EveryKeyMeetsItsEquationsSideConditions) {
  for (int d = 2; d <= 8; ++d) {
    InvariantTable t{Family::N, d, std::nullopt, {}};
    t.for_each_cell([&](int a, int c) {
      const InvariantKey k = t.key(a, c);
      switch (dispatch(k)) {
        case EquationId::e1122a: EXPECT_GE(a, 3) << k; break;
        case EquationId::e1155: EXPECT_TRUE(a >= 1 && c >= 2) << k; break;
        case EquationId::e1123a: EXPECT_GE(c, 1) << k; break;
        case EquationId::e1123b: EXPECT_TRUE(a >= 1 && k.b >= 1) << k; break;
        case EquationId::e2245: EXPECT_TRUE(a == 0 && k.b >= 1 && c >= 1) << k; break;
        case EquationId::e1122b: EXPECT_TRUE(a == 0 && c == 0) << k; break;
        default: ADD_FAILURE() << k;
      }
    });
  }
}

TEST(Dispatch, CuspidalEquationByClass) {
  EXPECT_EQ(cusp_equation(CondClass::h2), EquationId::e1144);
  EXPECT_EQ(cusp_equation(CondClass::h), EquationId::e1134);
  EXPECT_EQ(cusp_equation(CondClass::one), EquationId::e1133);
  EXPECT_FALSE(cusp_equation(CondClass::hv).has_value());
  EXPECT_FALSE(cusp_equation(CondClass::h2hv).has_value());
}

struct Example {
  InvariantKey key;
  EquationId equation;
  std::int64_t value;
};

class EquationExamples : public ::testing::TestWithParam<Example> {};

TEST_P(EquationExamples, ComputedValueAndRoute) {
  const Example& ex = GetParam();
  Engine engine;
  EXPECT_EQ(equation_of(ex.key), ex.equation);
  EXPECT_EQ(engine.compute(ex.key), Rational(ex.value)) << ex.key;
}

INSTANTIATE_TEST_SUITE_P(
    Tables, EquationExamples,
    ::testing::Values(Example{InvariantKey::n(3, 4, 4, 0), EquationId::e1122a, 480},
                      Example{InvariantKey::n(2, 5, 0, 0), EquationId::e1122a, 1},
                      Example{InvariantKey::n(3, 3, 1, 2), EquationId::e1122a, 20},
                      Example{InvariantKey::n(2, 1, 0, 2), EquationId::e1155, 1},
                      Example{InvariantKey::n(3, 1, 1, 3), EquationId::e1155, 12},
                      Example{InvariantKey::n(3, 2, 2, 2), EquationId::e1155, 40},
                      Example{InvariantKey::n(3, 0, 2, 3), EquationId::e1123a, 16},
                      Example{InvariantKey::n(3, 0, 0, 4), EquationId::e1123a, 4},
                      Example{InvariantKey::n(4, 0, 1, 5), EquationId::e1123a, 120},
                      Example{InvariantKey::n(2, 2, 3, 0), EquationId::e1123b, 4},
                      Example{InvariantKey::n(2, 1, 2, 1), EquationId::e1123b, 2},
                      Example{InvariantKey::n(3, 3, 5, 0), EquationId::e1123b, 712},
                      Example{InvariantKey::n(2, 0, 3, 1), EquationId::e2245, 1},
                      Example{InvariantKey::n(2, 0, 1, 2), EquationId::e2245, 1},
                      Example{InvariantKey::n(3, 0, 4, 2), EquationId::e2245, 56},
                      Example{InvariantKey::n(2, 0, 5, 0), EquationId::e1122b, 1},
                      Example{InvariantKey::n(3, 0, 8, 0), EquationId::e1122b, 400},
                      Example{InvariantKey::n(4, 0, 11, 0), EquationId::e1122b, 581904},
                      Example{InvariantKey::cusp(3, 0, 3, 1, CondClass::h2), EquationId::e1144, 14},
                      Example{InvariantKey::cusp(3, 5, 0, 0, CondClass::h2), EquationId::e1144, 2},
                      Example{InvariantKey::cusp(4, 0, 8, 0, CondClass::h2), EquationId::e1144, 17444},
                      Example{InvariantKey::cusp(3, 0, 6, 0, CondClass::h), EquationId::e1134, 72},
                      Example{InvariantKey::cusp(3, 6, 0, 0, CondClass::h), EquationId::e1134, 12},
                      Example{InvariantKey::cusp(4, 2, 5, 1, CondClass::h), EquationId::e1134, 24812},
                      Example{InvariantKey::cusp(3, 0, 7, 0, CondClass::one), EquationId::e1133, 24},
                      Example{InvariantKey::cusp(3, 3, 0, 2, CondClass::one), EquationId::e1133, 12},
                      Example{InvariantKey::cusp(4, 10, 0, 0, CondClass::one), EquationId::e1133, 2304}));

// Each equation, fed only table values, must reproduce every table cell routed to it.
TEST(Isolation, EveryEquationReproducesItsCellsFromTableValues) {
  TableLookup lk;
  std::map<EquationId, int> checked;
  for (const auto& [key, want] : lk.values()) {
    const EquationId eq = equation_of(key);
    if (eq == EquationId::base) continue;
    EXPECT_EQ(evaluate(eq, key, lk), want) << key << " via " << equation_name(eq);
    ++checked[eq];
  }
  for (EquationId id : kRecursionEquations) EXPECT_GT(checked[id], 0) << equation_name(id);
}

// The quoted forms disagree with the tables; 1144 is the one equation quoted correctly.
TEST(Isolation, LiteralTranscriptionsDisagreeWithTables) {
  TableLookup lk;
  std::map<EquationId, int> disagreements;
  std::map<EquationId, int> cells;
  for (const auto& [key, want] : lk.values()) {
    const EquationId eq = equation_of(key);
    if (eq == EquationId::base) continue;
    ++cells[eq];
    if (evaluate(eq, key, lk, EquationSet::literal()) != want) ++disagreements[eq];
  }
  for (EquationId id : kRecursionEquations) {
    if (id == EquationId::e1144) {
      EXPECT_EQ(disagreements[id], 0);
    } else {
      EXPECT_GT(disagreements[id], 0) << equation_name(id) << " literal form matched all " << cells[id] << " cells";
    }
  }
}

TEST(Isolation, LiteralTangencySumBreaksSmallestConic) {
  TableLookup lk;
  EXPECT_EQ(eval_1122a(InvariantKey::n(2, 5, 0, 0), lk, Transcription::literal), Rational(1, 2));
  EXPECT_EQ(eval_1122a(InvariantKey::n(2, 5, 0, 0), lk, Transcription::rederived), Rational(1));
}

// The printed C_5(2,0,5;h) = 17160 contradicts the printed C_5(2,1,5;1) = 23400
// under 1133; the recomputed 4440 is consistent with it.
TEST(Isolation, MisprintedQuinticCellContradictsNeighbouringTable) {
  const InvariantKey target = InvariantKey::cusp(5, 2, 1, 5, CondClass::one);
  TableLookup corrected(true);
  TableLookup printed(false);
  EXPECT_EQ(printed.values().at(InvariantKey::cusp(5, 2, 0, 5, CondClass::h)), Rational(17160));
  EXPECT_EQ(corrected.values().at(InvariantKey::cusp(5, 2, 0, 5, CondClass::h)), Rational(4440));
  EXPECT_EQ(printed.values().at(target), Rational(23400));
  EXPECT_EQ(eval_1133(target, corrected), Rational(23400));
  EXPECT_EQ(eval_1133(target, printed), Rational(10680));
}

TEST(Transcription, SetSelectsPerEquation) {
  EquationSet set = EquationSet::reference();
  set.with(EquationId::e1134, Transcription::literal);
  EXPECT_EQ(set.of(EquationId::e1134), Transcription::literal);
  EXPECT_EQ(set.of(EquationId::e1133), Transcription::rederived);
}

TEST(Coefficients, OverflowIsReportedNotWrapped) {
  const detail::Count big(std::int64_t{1} << 62);
  EXPECT_THROW(big * 4, std::overflow_error);
  EXPECT_THROW(big + big, std::overflow_error);
}

}  // namespace
}  // namespace charnum
