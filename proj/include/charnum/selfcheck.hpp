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

#ifndef CHARNUM_SELFCHECK_HPP
#define CHARNUM_SELFCHECK_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "charnum/determinants.hpp"
#include "charnum/engine.hpp"
#include "charnum/invariant.hpp"
#include "charnum/kontsevich.hpp"
#include "charnum/potentials.hpp"

namespace charnum {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// N_d(3d-1,0,0) from the recursion against the classical recursion, d = 1..max_d.
template <class Store>
CheckResult check_oracle(Evaluator<Store>& eval, int max_d) {
  CheckResult r{"oracle N_d(3d-1,0,0), d=1.." + std::to_string(max_d), true, {}};
  const auto oracle = kontsevich_numbers(max_d);
  std::ostringstream os;
  for (int d = 1; d <= max_d; ++d) {
    const Rational got = eval.compute(InvariantKey::n(d, 3 * d - 1, 0, 0));
    const Rational want(oracle[static_cast<std::size_t>(d)]);
    if (d > 1) os << ", ";
    os << got;
    if (got != want) {
      r.passed = false;
      os << " (oracle " << want << ")";
    }
  }
  r.detail = os.str();
  return r;
}

/// The potential product yields exactly the hard-coded nonzero C_2 values.
inline CheckResult check_ctwo() {
  CheckResult r{"degree-2 cuspidal values from potentials", true, {}};
  const auto got = ctwo_from_potentials();
  std::map<CuspKey, Rational> want;
  for (const auto& [k, v] : cuspidal_conic_values()) want.emplace(CuspKey{k.a, k.b, k.c, *k.cls}, v);
  r.passed = got == want;
  std::ostringstream os;
  os << got.size() << " nonzero values";
  if (!r.passed) os << ", expected " << want.size() << " matching the base table";
  r.detail = os.str();
  return r;
}

template <class Store>
CheckResult check_epot_through(Evaluator<Store>& eval, int max_d) {
  CheckResult r{"E potential identity, d=1.." + std::to_string(max_d), true, {}};
  std::ostringstream os;
  for (int d = 1; d <= max_d; ++d) {
    const EpotReport rep = check_epot(d, [&](int e, int a, int b, int c) { return eval.compute(InvariantKey::n(e, a, b, c)); });
    if (d > 1) os << "; ";
    os << rep.describe();
    r.passed = r.passed && rep.ok();
  }
  r.detail = os.str();
  return r;
}

inline CheckResult check_determinants(int lo = 2, int hi = 12) {
  CheckResult r{"determinants d=" + std::to_string(lo) + ".." + std::to_string(hi), true, {}};
  std::ostringstream os;
  for (int d = lo; d <= hi; ++d) {
    const Rational m8 = det_check_8x8(d);
    const Rational m3 = det_check_3x3(d);
    const bool ok = m8 == det_8x8_closed_form(d) && m3 == det_3x3_closed_form(d) && !m8.is_zero() && !m3.is_zero();
    if (!ok) {
      r.passed = false;
      os << "d=" << d << ": 8x8 " << m8 << " vs " << det_8x8_closed_form(d) << ", 3x3 " << m3 << " vs "
         << det_3x3_closed_form(d) << "; ";
    }
  }
  if (r.passed) os << "8x8 at d=2: " << det_check_8x8(lo) << ", 3x3 at d=2: " << det_check_3x3(lo);
  r.detail = os.str();
  return r;
}

/// C_3(a,b,c;1) = C_3(b,a,c;1).
template <class Store>
CheckResult check_duality(Evaluator<Store>& eval) {
  CheckResult r{"cuspidal cubic duality C_3(a,b,c;1) = C_3(b,a,c;1)", true, {}};
  const InvariantTable shape{Family::C, 3, CondClass::one, {}};
  std::size_t pairs = 0;
  shape.for_each_cell([&](int a, int c) {
    const int b = shape.b_of(a, c);
    const Rational x = eval.compute(InvariantKey::cusp(3, a, b, c, CondClass::one));
    const Rational y = eval.compute(InvariantKey::cusp(3, b, a, c, CondClass::one));
    ++pairs;
    if (x != y && r.passed) {
      r.passed = false;
      r.detail = "differs at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    }
  });
  if (r.passed) r.detail = std::to_string(pairs) + " keys";
  return r;
}

/// Nonnegative integer values for every N key with d <= max_n and C key with 3 <= d <= max_c.
template <class Store>
CheckResult check_integrality(Evaluator<Store>& eval, int max_n, int max_c) {
  CheckResult r{"integrality N d<=" + std::to_string(max_n) + ", C 3<=d<=" + std::to_string(max_c), true, {}};
  std::size_t keys = 0;
  auto check = [&](const InvariantTable& shape) {
    shape.for_each_cell([&](int a, int c) {
      const InvariantKey k = shape.key(a, c);
      const Rational v = eval.compute(k);
      ++keys;
      if ((!v.is_integer() || v.sign() < 0) && r.passed) {
        r.passed = false;
        r.detail = k.to_string() + " = " + v.to_string();
      }
    });
  };
  for (int d = 1; d <= max_n; ++d) check(InvariantTable{Family::N, d, std::nullopt, {}});
  for (int d = 3; d <= max_c; ++d) {
    for (CondClass s : {CondClass::h2, CondClass::h, CondClass::one}) check(InvariantTable{Family::C, d, s, {}});
  }
  if (r.passed) r.detail = std::to_string(keys) + " keys";
  return r;
}

/// Everything `charnum selfcheck` runs.
inline std::vector<CheckResult> run_selfcheck(const EngineConfig& config = {}) {
  Engine engine(config);
  auto& eval = engine.evaluator();
  std::vector<CheckResult> out;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  guarded("oracle", [&] { return check_oracle(eval, config.max_degree); });
  guarded("ctwo", [] { return check_ctwo(); });
  guarded("epot", [&] { return check_epot_through(eval, 3); });
  guarded("determinants", [] { return check_determinants(2, 12); });
  guarded("duality", [&] { return check_duality(eval); });
  return out;
}

}  // namespace charnum

#endif  // CHARNUM_SELFCHECK_HPP
