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

// Reference tables and their verification.
//
// A fixture is one published table copied verbatim:
//   {"table_id": "7.1", "family": "N", "d": 2, "class": null,
//    "entries": [{"a": 0, "c": 2, "value": "1"}, ...],
//    "errata": [{"a": .., "c": .., "printed": "..", "value": "..", "note": ".."}]}
// `errata` is optional. An erratum names a printed cell known to be wrong and
// the value it should hold; the entry itself keeps the printed value.

#ifndef CHARNUM_GOLDEN_HPP
#define CHARNUM_GOLDEN_HPP

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charnum/engine.hpp"
#include "charnum/invariant.hpp"
#include "charnum/rational.hpp"
#include "charnum/table.hpp"

namespace charnum {

struct GoldenEntry {
  int a = 0;
  int c = 0;
  Rational value;
};

struct Erratum {
  int a = 0;
  int c = 0;
  Rational printed;
  Rational value;
  std::string note;
};

struct GoldenFixture {
  std::string table_id;
  Family family = Family::N;
  int d = 1;
  std::optional<CondClass> cls;
  std::vector<GoldenEntry> entries;
  std::vector<Erratum> errata;
  std::string source;  ///< file the fixture was read from, if any

  InvariantTable shape() const { return InvariantTable{family, d, cls, {}}; }
  InvariantKey key(const GoldenEntry& e) const { return shape().key(e.a, e.c); }

  const Erratum* erratum_at(int a, int c) const {
    for (const auto& e : errata) {
      if (e.a == a && e.c == c) return &e;
    }
    return nullptr;
  }
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational fixture_value(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) throw FixtureError(where + ": value must be a string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw FixtureError(where + ": " + e.what());
  }
}

inline int fixture_int(const nlohmann::json& obj, const char* field, const std::string& where) {
  if (!obj.is_object() || !obj.contains(field) || !obj[field].is_number_integer()) {
    throw FixtureError(where + ": field '" + field + "' must be an integer");
  }
  return obj[field].get<int>();
}

/// (7, 10) for "7.10"; used to order tables numerically.
inline std::pair<int, int> table_order(const std::string& id) {
  const auto dot = id.find('.');
  try {
    if (dot == std::string::npos) return {std::stoi(id), 0};
    return {std::stoi(id.substr(0, dot)), std::stoi(id.substr(dot + 1))};
  } catch (const std::exception&) {
    return {0, 0};
  }
}

}  // namespace detail

inline GoldenFixture parse_fixture(const nlohmann::json& j, const std::string& source = "<fixture>") {
  if (!j.is_object()) throw FixtureError(source + ": expected a JSON object");
  for (const char* f : {"table_id", "family", "d", "class", "entries"}) {
    if (!j.contains(f)) throw FixtureError(source + ": missing field '" + f + "'");
  }
  GoldenFixture fx;
  fx.source = source;
  if (!j["table_id"].is_string()) throw FixtureError(source + ": table_id must be a string");
  fx.table_id = j["table_id"].get<std::string>();
  const auto family = j["family"].is_string() ? parse_family(j["family"].get<std::string>()) : std::nullopt;
  if (!family || *family == Family::E) throw FixtureError(source + ": family must be \"N\" or \"C\"");
  fx.family = *family;
  fx.d = detail::fixture_int(j, "d", source);
  if (!j["class"].is_null()) {
    fx.cls = j["class"].is_string() ? parse_class(j["class"].get<std::string>()) : std::nullopt;
    if (!fx.cls) throw FixtureError(source + ": unknown class");
  }
  if ((fx.family == Family::N) == fx.cls.has_value()) {
    throw FixtureError(source + ": class must be null for N and set for C");
  }
  if (!j["entries"].is_array() || j["entries"].empty()) throw FixtureError(source + ": entries must be a nonempty array");

  InvariantTable seen = fx.shape();
  for (std::size_t i = 0; i < j["entries"].size(); ++i) {
    const auto& e = j["entries"][i];
    const std::string where = source + ": entry " + std::to_string(i);
    GoldenEntry ge{detail::fixture_int(e, "a", where), detail::fixture_int(e, "c", where), {}};
    if (!e.contains("value")) throw FixtureError(where + ": missing value");
    ge.value = detail::fixture_value(e["value"], where);
    if (!is_valid(fx.key(ge))) {
      throw FixtureError(where + ": (a=" + std::to_string(ge.a) + ", c=" + std::to_string(ge.c) +
                         ") lies outside the table");
    }
    if (!seen.entries.emplace(std::make_pair(ge.a, ge.c), ge.value).second) {
      throw FixtureError(where + ": duplicate cell");
    }
    fx.entries.push_back(std::move(ge));
  }
  if (!seen.complete()) throw FixtureError(source + ": table is incomplete");

  if (j.contains("errata")) {
    if (!j["errata"].is_array()) throw FixtureError(source + ": errata must be an array");
    for (std::size_t i = 0; i < j["errata"].size(); ++i) {
      const auto& e = j["errata"][i];
      const std::string where = source + ": erratum " + std::to_string(i);
      Erratum er{detail::fixture_int(e, "a", where), detail::fixture_int(e, "c", where), {}, {}, {}};
      if (!e.contains("printed") || !e.contains("value")) throw FixtureError(where + ": needs printed and value");
      er.printed = detail::fixture_value(e["printed"], where);
      er.value = detail::fixture_value(e["value"], where);
      if (e.contains("note") && e["note"].is_string()) er.note = e["note"].get<std::string>();
      auto cell = seen.entries.find({er.a, er.c});
      if (cell == seen.entries.end() || cell->second != er.printed) {
        throw FixtureError(where + ": printed value does not match the entry");
      }
      fx.errata.push_back(std::move(er));
    }
  }
  return fx;
}

inline GoldenFixture load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot read fixture " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FixtureError(path.string() + ": " + e.what());
  }
  return parse_fixture(j, path.string());
}

/// Every *.json fixture in `dir`, ordered by table id. An empty directory is an error.
inline std::vector<GoldenFixture> load_fixtures(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw FixtureError("fixture directory not found: " + dir.string());
  std::vector<GoldenFixture> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(load_fixture(entry.path()));
  }
  if (out.empty()) throw FixtureError("no fixtures in " + dir.string());
  std::sort(out.begin(), out.end(), [](const GoldenFixture& x, const GoldenFixture& y) {
    return detail::table_order(x.table_id) < detail::table_order(y.table_id);
  });
  return out;
}

struct GoldenMismatch {
  int a = 0, b = 0, c = 0;
  Rational expected;
  Rational computed;
  std::string trace;
};

struct ErratumCheck {
  Erratum erratum;
  Rational computed;
  bool confirmed() const { return computed == erratum.value; }
};

struct TableReport {
  std::string table_id;
  std::string title;
  std::size_t entries = 0;
  std::size_t matched = 0;  ///< entries equal to the printed value
  std::size_t mismatches = 0;
  std::optional<GoldenMismatch> first_mismatch;
  std::vector<ErratumCheck> errata;
  std::string error;  ///< evaluation failure, with trace

  /// Every printed value reproduced except cells with a confirmed erratum.
  bool passed() const {
    return error.empty() && mismatches == 0 &&
           std::all_of(errata.begin(), errata.end(), [](const ErratumCheck& e) { return e.confirmed(); });
  }
  /// Every printed value reproduced.
  bool verbatim() const { return error.empty() && matched == entries; }
};

struct GoldenReport {
  std::vector<TableReport> tables;

  bool passed() const {
    return !tables.empty() && std::all_of(tables.begin(), tables.end(), [](const auto& t) { return t.passed(); });
  }
  bool verbatim() const {
    return !tables.empty() && std::all_of(tables.begin(), tables.end(), [](const auto& t) { return t.verbatim(); });
  }
  std::size_t entries() const {
    return std::accumulate(tables.begin(), tables.end(), std::size_t{0},
                           [](std::size_t s, const auto& t) { return s + t.entries; });
  }
  std::size_t matched() const {
    return std::accumulate(tables.begin(), tables.end(), std::size_t{0},
                           [](std::size_t s, const auto& t) { return s + t.matched; });
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& t : tables) {
      os << (t.passed() ? "PASS" : "FAIL") << " table " << t.table_id << " " << t.title << ": " << t.matched << "/"
         << t.entries << " printed values reproduced";
      if (!t.error.empty()) os << "; error: " << t.error;
      if (t.first_mismatch) {
        const auto& m = *t.first_mismatch;
        os << "; " << t.mismatches << " mismatch(es), first at a=" << m.a << " b=" << m.b << " c=" << m.c
           << ": expected " << m.expected << ", computed " << m.computed << " via " << m.trace;
      }
      os << "\n";
      for (const auto& e : t.errata) {
        os << "  erratum a=" << e.erratum.a << " c=" << e.erratum.c << ": printed " << e.erratum.printed
           << ", corrected " << e.erratum.value << ", computed " << e.computed
           << (e.confirmed() ? " (confirmed)" : " (NOT confirmed)") << "\n";
        if (!e.erratum.note.empty()) os << "    " << e.erratum.note << "\n";
      }
    }
    os << (passed() ? "PASS" : "FAIL") << ": " << matched() << "/" << entries() << " printed values reproduced across "
       << tables.size() << " tables";
    if (passed() && !verbatim()) os << "; remaining cells are declared errata";
    os << "\n";
    return os.str();
  }
};

/// Recomputes every fixture entry through `eval`. With `shuffle_seed` the keys
/// are evaluated in a seeded random order; the report does not depend on it.
template <class Store>
GoldenReport verify_goldens(const std::vector<GoldenFixture>& fixtures, Evaluator<Store>& eval,
                            std::optional<std::uint64_t> shuffle_seed = std::nullopt) {
  struct Job {
    std::size_t table;
    std::size_t entry;
  };
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < fixtures.size(); ++t) {
    for (std::size_t e = 0; e < fixtures[t].entries.size(); ++e) jobs.push_back({t, e});
  }
  if (shuffle_seed) {
    std::mt19937_64 rng(*shuffle_seed);
    std::shuffle(jobs.begin(), jobs.end(), rng);
  }

  std::vector<std::vector<std::optional<Rational>>> computed(fixtures.size());
  std::vector<std::string> errors(fixtures.size());
  for (std::size_t t = 0; t < fixtures.size(); ++t) computed[t].resize(fixtures[t].entries.size());
  for (const Job& job : jobs) {
    if (!errors[job.table].empty()) continue;
    try {
      computed[job.table][job.entry] = eval.compute(fixtures[job.table].key(fixtures[job.table].entries[job.entry]));
    } catch (const std::exception& e) {
      errors[job.table] = e.what();
    }
  }

  GoldenReport report;
  for (std::size_t t = 0; t < fixtures.size(); ++t) {
    const GoldenFixture& fx = fixtures[t];
    TableReport tr;
    tr.table_id = fx.table_id;
    tr.title = table_title(InvariantTable{fx.family, fx.d, fx.cls, {}});
    tr.entries = fx.entries.size();
    tr.error = errors[t];
    if (!tr.error.empty()) {
      report.tables.push_back(std::move(tr));
      continue;
    }
    for (std::size_t e = 0; e < fx.entries.size(); ++e) {
      const GoldenEntry& ge = fx.entries[e];
      const Rational& got = *computed[t][e];
      if (got == ge.value) ++tr.matched;
      if (const Erratum* er = fx.erratum_at(ge.a, ge.c)) {
        tr.errata.push_back(ErratumCheck{*er, got});
        continue;
      }
      if (got == ge.value) continue;
      ++tr.mismatches;
      if (!tr.first_mismatch) {
        const InvariantKey k = fx.key(ge);
        tr.first_mismatch = GoldenMismatch{k.a, k.b, k.c, ge.value, got,
                                           k.to_string() + " [" + std::string(equation_name(
                                                                      Evaluator<Store>::equation_for(k))) + "]"};
      }
    }
    report.tables.push_back(std::move(tr));
  }
  return report;
}

}  // namespace charnum

#endif  // CHARNUM_GOLDEN_HPP
