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

// Persistent invariant cache: JSON lines, one record per memoized key,
// sorted in canonical key order.
//
//   {"family":"N","d":2,"class":null,"a":0,"b":5,"c":0,"num":"1","den":"1"}

#ifndef CHARNUM_CACHE_HPP
#define CHARNUM_CACHE_HPP

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "charnum/invariant.hpp"
#include "charnum/rational.hpp"

namespace charnum {

using CacheEntries = std::vector<std::pair<InvariantKey, Rational>>;

class CacheError : public std::runtime_error {
 public:
  CacheError(std::size_t line, const std::string& what)
      : std::runtime_error("cache line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct CacheOptions {
  bool include_zeros = true;
};

inline std::string cache_record(const InvariantKey& key, const Rational& value) {
  nlohmann::ordered_json j;
  j["family"] = std::string(family_name(key.family));
  j["d"] = key.d;
  j["class"] = key.cls ? nlohmann::ordered_json(std::string(class_name(*key.cls))) : nlohmann::ordered_json(nullptr);
  j["a"] = key.a;
  j["b"] = key.b;
  j["c"] = key.c;
  j["num"] = value.numerator().get_str();
  j["den"] = value.denominator().get_str();
  return j.dump();
}

/// Writes `entries` sorted canonically, one record per line with LF endings.
inline void cache_export(CacheEntries entries, std::ostream& out, const CacheOptions& options = {}) {
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [key, value] : entries) {
    if (key.family == Family::E) throw std::invalid_argument("cache_export: E values are never cached");
    if (!options.include_zeros && value.is_zero()) continue;
    out << cache_record(key, value) << '\n';
  }
}

inline void cache_export(const CacheEntries& entries, const std::string& path, const CacheOptions& options = {}) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write cache file " + path);
  cache_export(entries, out, options);
  if (!out.flush()) throw std::runtime_error("write failed for cache file " + path);
}

namespace detail {

inline std::pair<InvariantKey, Rational> parse_cache_record(const std::string& text, std::size_t line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CacheError(line, std::string("malformed JSON: ") + e.what());
  }
  static const std::vector<std::string> kFields = {"family", "d", "class", "a", "b", "c", "num", "den"};
  if (!j.is_object() || j.size() != kFields.size()) throw CacheError(line, "expected an object with 8 fields");
  for (const auto& f : kFields) {
    if (!j.contains(f)) throw CacheError(line, "missing field '" + f + "'");
  }
  if (!j["family"].is_string()) throw CacheError(line, "family must be a string");
  const auto family = parse_family(j["family"].get<std::string>());
  if (!family) throw CacheError(line, "unknown family '" + j["family"].get<std::string>() + "'");
  if (*family == Family::E) throw CacheError(line, "E values are never cached");
  for (const char* f : {"d", "a", "b", "c"}) {
    if (!j[f].is_number_integer()) throw CacheError(line, std::string("field '") + f + "' must be an integer");
  }
  std::optional<CondClass> cls;
  if (!j["class"].is_null()) {
    if (!j["class"].is_string()) throw CacheError(line, "class must be a string or null");
    cls = parse_class(j["class"].get<std::string>());
    if (!cls) throw CacheError(line, "unknown class '" + j["class"].get<std::string>() + "'");
  }
  const InvariantKey key{*family, j["d"].get<int>(), j["a"].get<int>(), j["b"].get<int>(), j["c"].get<int>(), cls};
  if (!is_valid(key)) throw CacheError(line, "invalid key " + key.to_string() + " (" + validity_rule(key.family, cls) + ")");
  if (!j["num"].is_string() || !j["den"].is_string()) throw CacheError(line, "num and den must be strings");
  mpz_class num;
  mpz_class den;
  if (!Rational::parse_integer(j["num"].get<std::string>(), num) ||
      !Rational::parse_integer(j["den"].get<std::string>(), den)) {
    throw CacheError(line, "num and den must be decimal integers");
  }
  if (den == 0) throw CacheError(line, "zero denominator");
  if (den < 0) throw CacheError(line, "denominator must be positive");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) throw CacheError(line, "value not in lowest terms");
  Rational value(mpq_class(num, den));
  if (cache_record(key, value) != text) throw CacheError(line, "record not in canonical form");
  return {key, value};
}

}  // namespace detail

/// Reads and validates a cache. Any bad record rejects the whole input.
inline CacheEntries cache_import(std::istream& in) {
  CacheEntries out;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    auto record = detail::parse_cache_record(text, line);
    if (!out.empty() && !(out.back().first < record.first)) {
      throw CacheError(line, out.back().first == record.first ? "duplicate key " + record.first.to_string()
                                                              : "records out of canonical order");
    }
    out.push_back(std::move(record));
  }
  return out;
}

inline CacheEntries cache_import(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read cache file " + path);
  return cache_import(in);
}

/// Seeds a store with imported entries.
template <class Store>
void load_into(Store& store, const CacheEntries& entries) {
  for (const auto& [k, v] : entries) store.insert(k, v);
}

}  // namespace charnum

#endif  // CHARNUM_CACHE_HPP
