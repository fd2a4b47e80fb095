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

#include <filesystem>
#include <sstream>
#include <string>

#include "charnum/cache.hpp"
#include "charnum/engine.hpp"
#include "charnum/table.hpp"

namespace charnum {
namespace {

std::string export_text(const CacheEntries& entries, CacheOptions options = {}) {
  std::ostringstream os;
  cache_export(entries, os, options);
  return os.str();
}

CacheEntries import_text(const std::string& text) {
  std::istringstream in(text);
  return cache_import(in);
}

// Every N and C table through degree 4, base cases included.
MemoStore full_store() {
  Engine engine;
  auto fill = [&](Family f, int d, std::optional<CondClass> s) {
    const InvariantTable t = build_table(f, d, s, engine.evaluator());
    for (const auto& [ac, v] : t.entries) engine.store().insert(t.key(ac.first, ac.second), v);
  };
  for (int d = 1; d <= 4; ++d) fill(Family::N, d, std::nullopt);
  for (int d = 2; d <= 4; ++d) {
    for (CondClass s : {CondClass::h2, CondClass::h, CondClass::one}) fill(Family::C, d, s);
  }
  return std::move(engine.store());
}

TEST(Cache, RecordFormat) {
  EXPECT_EQ(cache_record(InvariantKey::n(2, 0, 5, 0), Rational(1)),
            R"({"family":"N","d":2,"class":null,"a":0,"b":5,"c":0,"num":"1","den":"1"})");
  EXPECT_EQ(cache_record(InvariantKey::cusp(2, 0, 2, 0, CondClass::h2), Rational(1, 2)),
            R"({"family":"C","d":2,"class":"h2","a":0,"b":2,"c":0,"num":"1","den":"2"})");
}

TEST(Cache, LineBaseCasesWithAndWithoutZeros) {
  CacheEntries lines_only;
  InvariantTable t{Family::N, 1, std::nullopt, {}};
  t.for_each_cell([&](int a, int c) { lines_only.emplace_back(t.key(a, c), *base_value(t.key(a, c))); });
  const std::string all = export_text(lines_only);
  const std::string nonzero = export_text(lines_only, CacheOptions{false});
  EXPECT_EQ(std::count(all.begin(), all.end(), '\n'), 4);
  EXPECT_EQ(std::count(nonzero.begin(), nonzero.end(), '\n'), 2);
}

TEST(Cache, ExportIsSortedCanonically) {
  CacheEntries entries = {{InvariantKey::n(3, 8, 0, 0), Rational(12)}, {InvariantKey::n(2, 0, 5, 0), Rational(1)}};
  const auto back = import_text(export_text(entries));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].first, InvariantKey::n(2, 0, 5, 0));
}

TEST(Cache, FullStoreRoundTripIsByteIdentical) {
  const MemoStore store = full_store();
  const std::string first = export_text(store.entries());
  MemoStore reloaded;
  load_into(reloaded, import_text(first));
  EXPECT_EQ(export_text(reloaded.entries()), first);
  EXPECT_EQ(reloaded.entries(), store.entries());
}

TEST(Cache, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "charnum_test_cache.jsonl";
  const MemoStore store = full_store();
  cache_export(store.entries(), path.string());
  const auto back = cache_import(path.string());
  EXPECT_EQ(back, store.entries());
  std::filesystem::remove(path);
}

TEST(Cache, WarmStoreGivesSameValues) {
  const MemoStore store = full_store();
  MemoStore warm;
  load_into(warm, store.entries());
  Evaluator<MemoStore> eval(warm);
  Engine cold;
  EXPECT_EQ(eval.compute(InvariantKey::n(4, 0, 11, 0)), cold.compute(InvariantKey::n(4, 0, 11, 0)));
  EXPECT_EQ(warm.size(), store.size());
}

void expect_rejected(const std::string& text, std::size_t line, const std::string& fragment) {
  try {
    import_text(text);
    FAIL() << "accepted: " << text;
  } catch (const CacheError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

const std::string kGood = R"({"family":"N","d":2,"class":null,"a":0,"b":5,"c":0,"num":"1","den":"1"})";

TEST(Cache, RejectsZeroDenominator) {
  expect_rejected(R"({"family":"N","d":2,"class":null,"a":0,"b":5,"c":0,"num":"1","den":"0"})", 1,
                  "zero denominator");
}

TEST(Cache, RejectsValueNotInLowestTerms) {
  expect_rejected(R"({"family":"C","d":2,"class":"h2","a":0,"b":2,"c":0,"num":"2","den":"4"})", 1, "lowest terms");
}

TEST(Cache, RejectsInvalidKey) {
  expect_rejected(kGood + "\n" + R"({"family":"N","d":2,"class":null,"a":3,"b":3,"c":0,"num":"0","den":"1"})", 2,
                  "invalid key");
}

TEST(Cache, RejectsDuplicatesAndDisorder) {
  expect_rejected(kGood + "\n" + kGood + "\n", 2, "duplicate");
  const std::string later = R"({"family":"N","d":3,"class":null,"a":8,"b":0,"c":0,"num":"12","den":"1"})";
  expect_rejected(later + "\n" + kGood + "\n", 2, "order");
}

TEST(Cache, RejectsMalformedRecords) {
  expect_rejected("not json", 1, "malformed");
  expect_rejected(R"({"family":"E","d":1,"class":"hv2","a":2,"b":0,"c":0,"num":"1","den":"2"})", 1, "never cached");
  expect_rejected(R"({"family":"N","d":2,"class":null,"a":0,"b":5,"c":0,"num":"1"})", 1, "8 fields");
  expect_rejected(R"({"family":"N","d":2,"class":null,"a":0,"b":5,"c":0,"num":"1.0","den":"1"})", 1, "decimal");
  expect_rejected(R"({"family":"N","d":2,"class":"h","a":0,"b":5,"c":0,"num":"1","den":"1"})", 1, "invalid key");
  expect_rejected(R"({"d":2,"family":"N","class":null,"a":0,"b":5,"c":0,"num":"1","den":"1"})", 1, "canonical");
  expect_rejected(kGood + "\r\n", 1, "canonical");
  expect_rejected(kGood + "\n\n", 2, "malformed");
}

TEST(Cache, EmptyFileIsAnEmptyCache) { EXPECT_TRUE(import_text("").empty()); }

TEST(Cache, MissingFileIsAnError) {
  EXPECT_THROW(cache_import(std::string("/nonexistent/charnum.jsonl")), std::runtime_error);
}

TEST(Cache, ConflictingSeedIsRejected) {
  MemoStore store;
  store.insert(InvariantKey::n(2, 0, 5, 0), Rational(1));
  EXPECT_NO_THROW(store.insert(InvariantKey::n(2, 0, 5, 0), Rational(1)));
  EXPECT_THROW(store.insert(InvariantKey::n(2, 0, 5, 0), Rational(2)), std::invalid_argument);
}

}  // namespace
}  // namespace charnum
