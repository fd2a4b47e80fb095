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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails for a reason other than a declared fixture erratum.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "charnum/cache.hpp"
#include "charnum/engine.hpp"
#include "charnum/golden.hpp"
#include "charnum/kontsevich.hpp"
#include "charnum/potentials.hpp"
#include "charnum/selfcheck.hpp"
#include "charnum/table.hpp"

namespace {

using namespace charnum;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  bool documented = false;  ///< failure fully explained by declared errata
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << s << " s";
  return os.str();
}

Outcome golden_tables() {
  const auto fixtures = load_fixtures(CHARNUM_FIXTURE_DIR);
  const auto t0 = Clock::now();
  Engine engine;
  const GoldenReport report = verify_goldens(fixtures, engine.evaluator());
  const double elapsed = seconds_since(t0);
  Outcome o;
  o.passed = report.verbatim() && elapsed < 120.0;
  o.documented = !o.passed && report.passed() && elapsed < 120.0;
  std::ostringstream os;
  os << report.matched() << "/" << report.entries() << " printed values reproduced exactly across "
     << report.tables.size() << " tables, cold cache, " << fmt_seconds(elapsed) << " (limit 120 s)";
  for (const auto& t : report.tables) {
    if (!t.error.empty()) os << "; table " << t.table_id << " error: " << t.error;
    if (t.first_mismatch) os << "; table " << t.table_id << " has " << t.mismatches << " undeclared mismatch(es)";
    for (const auto& e : t.errata) {
      os << "; table " << t.table_id << " a=" << e.erratum.a << " c=" << e.erratum.c << " prints " << e.erratum.printed
         << ", computed " << e.computed << (e.confirmed() ? " (declared erratum, confirmed)" : " (erratum NOT confirmed)");
    }
  }
  o.detail = os.str();
  return o;
}

Outcome oracle() {
  Engine engine;
  const auto want = kontsevich_numbers(6);
  const std::vector<long> printed = {1, 1, 12, 620, 87304};
  Outcome o{true, false, {}};
  std::ostringstream os;
  for (int d = 1; d <= 6; ++d) {
    const Rational got = engine.compute(InvariantKey::n(d, 3 * d - 1, 0, 0));
    if (got != Rational(want[static_cast<std::size_t>(d)])) o.passed = false;
    if (d <= 5 && got != Rational(printed[static_cast<std::size_t>(d - 1)])) o.passed = false;
    os << (d > 1 ? ", " : "") << got;
  }
  o.detail = "N_d(3d-1,0,0), d=1..6: " + os.str() + "; oracle and printed d<=5 values agree";
  if (!o.passed) o.detail += " FAILED";
  return o;
}

Outcome ctwo() {
  const CheckResult r = check_ctwo();
  bool halves = false;
  for (const auto& [k, v] : ctwo_from_potentials()) halves = halves || v == Rational(1, 2);
  return {r.passed && halves, false, r.detail + (halves ? ", including 1/2" : ", no 1/2 value")};
}

Outcome epot() {
  Engine engine;
  const CheckResult r = check_epot_through(engine.evaluator(), 3);
  return {r.passed, false, r.detail};
}

Outcome determinants() {
  const CheckResult r = check_determinants(2, 12);
  return {r.passed, false, "d=2..12, closed forms exact and nonzero; " + r.detail};
}

Outcome integrality() {
  Engine engine;
  const CheckResult r = check_integrality(engine.evaluator(), 6, 5);
  return {r.passed, false, r.detail};
}

Outcome duality() {
  Engine engine;
  const CheckResult r = check_duality(engine.evaluator());
  return {r.passed, false, r.detail};
}

CacheEntries full_store_entries() {
  Engine engine;
  auto fill = [&](Family f, int d, std::optional<CondClass> s) {
    const InvariantTable t = build_table(f, d, s, engine.evaluator());
    for (const auto& [ac, v] : t.entries) engine.store().insert(t.key(ac.first, ac.second), v);
  };
  for (int d = 1; d <= 4; ++d) fill(Family::N, d, std::nullopt);
  for (int d = 2; d <= 4; ++d) {
    for (CondClass s : {CondClass::h2, CondClass::h, CondClass::one}) fill(Family::C, d, s);
  }
  return engine.store().entries();
}

Outcome determinism() {
  const CacheEntries entries = full_store_entries();
  std::stringstream first;
  cache_export(entries, first);
  std::stringstream in(first.str());
  MemoStore reloaded;
  load_into(reloaded, cache_import(in));
  std::stringstream second;
  cache_export(reloaded.entries(), second);
  const bool round_trip = first.str() == second.str();

  const auto fixtures = load_fixtures(CHARNUM_FIXTURE_DIR);
  Engine cold;
  const std::string base = verify_goldens(fixtures, cold.evaluator()).to_text();
  std::stringstream cache;
  cache_export(cold.store().entries(), cache);
  Engine warm;
  load_into(warm.store(), cache_import(cache));
  const bool warm_same = verify_goldens(fixtures, warm.evaluator()).to_text() == base;
  bool order_same = true;
  for (std::uint64_t seed : {11u, 12345u, 987654321u}) {
    Engine shuffled;
    order_same = order_same && verify_goldens(fixtures, shuffled.evaluator(), seed).to_text() == base;
  }
  std::ostringstream os;
  os << entries.size() << " records, export->import->export " << (round_trip ? "byte-identical" : "DIFFERS")
     << "; warm vs cold report " << (warm_same ? "identical" : "DIFFERS") << "; 3 shuffled orders "
     << (order_same ? "identical" : "DIFFER");
  return {round_trip && warm_same && order_same, false, os.str()};
}

Outcome stretch() {
  const auto t0 = Clock::now();
  Engine engine(EngineConfig{8, 5, EquationSet::reference()});
  const auto want = kontsevich_numbers(8);
  bool ok = true;
  std::ostringstream os;
  for (int d = 7; d <= 8; ++d) {
    const Rational got = engine.compute(InvariantKey::n(d, 3 * d - 1, 0, 0));
    ok = ok && got == Rational(want[static_cast<std::size_t>(d)]);
    os << "N_" << d << "(" << 3 * d - 1 << ",0,0) = " << got << "; ";
  }
  std::size_t keys = 0;
  for (int d = 7; d <= 8; ++d) {
    const InvariantTable t = build_table(Family::N, d, std::nullopt, engine.evaluator());
    for (const auto& [ac, v] : t.entries) {
      ++keys;
      ok = ok && v.is_integer() && v.sign() >= 0;
    }
  }
  os << keys << " N keys at d=7..8 integral and nonnegative, " << fmt_seconds(seconds_since(t0));
  return {ok, false, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {1, "golden tables", golden_tables}, {2, "oracle consistency", oracle},
      {3, "C_2 base recovery", ctwo},      {4, "Epot identity", epot},
      {5, "determinants", determinants},   {6, "integrality", integrality},
      {7, "duality", duality},             {8, "determinism and round trip", determinism},
      {9, "stretch d=7..8", stretch},
  };
  int failed = 0;
  int documented = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << "\n";
    if (!o.passed) ++(o.documented ? documented : failed);
  }
  std::cout << "summary: " << criteria.size() - static_cast<std::size_t>(failed + documented) << " PASS, "
            << failed + documented << " FAIL";
  if (documented > 0) std::cout << " (" << documented << " documented erratum, see README)";
  std::cout << "\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
