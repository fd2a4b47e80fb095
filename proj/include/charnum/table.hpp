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

#ifndef CHARNUM_TABLE_HPP
#define CHARNUM_TABLE_HPP

#include <json.hpp>

#include <algorithm>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "charnum/engine.hpp"
#include "charnum/invariant.hpp"
#include "charnum/rational.hpp"

namespace charnum {

enum class TableFormat { markdown, csv, json };

inline std::optional<TableFormat> parse_format(std::string_view text) {
  if (text == "markdown" || text == "md") return TableFormat::markdown;
  if (text == "csv") return TableFormat::csv;
  if (text == "json") return TableFormat::json;
  return std::nullopt;
}

inline void check_table_request(Family family, std::optional<CondClass> cls) {
  if ((family == Family::N) == cls.has_value()) {
    throw std::invalid_argument(family == Family::N ? "N tables take no class" : "C and E tables need a class");
  }
}

/// Fills every cell of one table through `eval`.
template <class Store>
InvariantTable build_table(Family family, int d, std::optional<CondClass> cls, Evaluator<Store>& eval) {
  check_table_request(family, cls);
  InvariantTable t{family, d, cls, {}};
  if (t.budget() < 0) return t;
  t.for_each_cell([&](int a, int c) { t.entries[{a, c}] = eval.compute(t.key(a, c)); });
  return t;
}

/// Fills a table with `threads` workers sharing `store`. Values are identical to build_table.
inline InvariantTable build_table_parallel(Family family, int d, std::optional<CondClass> cls,
                                           SharedMemoStore& store, const EngineConfig& config, unsigned threads) {
  check_table_request(family, cls);
  InvariantTable t{family, d, cls, {}};
  if (t.budget() < 0) return t;
  std::vector<std::pair<int, int>> cells;
  t.for_each_cell([&](int a, int c) { cells.emplace_back(a, c); });
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));

  std::vector<Rational> values(cells.size());
  std::mutex error_mu;
  std::exception_ptr error;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        Evaluator<SharedMemoStore> eval(store, config);
        try {
          for (std::size_t i = w; i < cells.size(); i += threads) {
            values[i] = eval.compute(t.key(cells[i].first, cells[i].second));
          }
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
  for (std::size_t i = 0; i < cells.size(); ++i) t.entries[cells[i]] = values[i];
  return t;
}

inline std::string table_title(const InvariantTable& t) {
  std::ostringstream os;
  os << family_name(t.family) << "_" << t.d << "(a,b,c";
  if (t.cls) os << ";" << class_name(*t.cls);
  os << ")";
  return os.str();
}

/// Rows c descending, columns a ascending; b = budget - a - 2c is implicit in
/// markdown and explicit in csv and json.
inline std::string render_table(const InvariantTable& t, TableFormat format) {
  std::ostringstream os;
  const int budget = t.budget();
  auto value = [&](int a, int c) {
    auto it = t.entries.find({a, c});
    if (it == t.entries.end()) throw std::invalid_argument("render_table: missing cell");
    return it->second.to_string();
  };
  switch (format) {
    case TableFormat::markdown: {
      os << "**" << table_title(t) << "**, b = " << budget << " - a - 2c\n\n";
      if (budget < 0) {
        os << "(empty)\n";
        break;
      }
      os << "| c \\ a |";
      for (int a = 0; a <= budget; ++a) os << " " << a << " |";
      os << "\n|---:|";
      for (int a = 0; a <= budget; ++a) os << "---:|";
      os << "\n";
      for (int c = t.max_c(); c >= 0; --c) {
        os << "| " << c << " |";
        for (int a = 0; a <= budget; ++a) {
          if (a <= t.max_a(c)) {
            os << " " << value(a, c) << " |";
          } else {
            os << "  |";
          }
        }
        os << "\n";
      }
      break;
    }
    case TableFormat::csv: {
      os << "family,d,class,a,b,c,value\n";
      for (int c = t.max_c(); c >= 0; --c) {
        for (int a = 0; a <= t.max_a(c); ++a) {
          os << family_name(t.family) << "," << t.d << "," << (t.cls ? class_name(*t.cls) : "") << "," << a << ","
             << t.b_of(a, c) << "," << c << "," << value(a, c) << "\n";
        }
      }
      break;
    }
    case TableFormat::json: {
      nlohmann::ordered_json j;
      j["family"] = std::string(family_name(t.family));
      j["d"] = t.d;
      j["class"] = t.cls ? nlohmann::ordered_json(std::string(class_name(*t.cls))) : nlohmann::ordered_json(nullptr);
      j["budget"] = budget;
      j["entries"] = nlohmann::ordered_json::array();
      for (int c = t.max_c(); c >= 0; --c) {
        for (int a = 0; a <= t.max_a(c); ++a) {
          j["entries"].push_back({{"a", a}, {"b", t.b_of(a, c)}, {"c", c}, {"value", value(a, c)}});
        }
      }
      os << j.dump(1) << "\n";
      break;
    }
  }
  return os.str();
}

}  // namespace charnum

#endif  // CHARNUM_TABLE_HPP
