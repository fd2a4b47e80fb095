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

// Command-line front end. Exit status: 0 success, 1 verification or integrity
// failure, 2 usage error.

#ifndef CHARNUM_CLI_HPP
#define CHARNUM_CLI_HPP

#include <CLI11.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "charnum/cache.hpp"
#include "charnum/engine.hpp"
#include "charnum/golden.hpp"
#include "charnum/invariant.hpp"
#include "charnum/selfcheck.hpp"
#include "charnum/table.hpp"

#ifndef CHARNUM_DEFAULT_FIXTURE_DIR
#define CHARNUM_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace charnum {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::optional<CondClass> class_option(Family family, const std::string& text) {
  if (family == Family::N) {
    if (!text.empty()) throw UsageError("N takes no --class");
    return std::nullopt;
  }
  if (text.empty()) throw UsageError(std::string(family_name(family)) + " needs --class (1, h, h2, hv, hv2, h2hv)");
  auto s = parse_class(text);
  if (!s) throw UsageError("unknown class '" + text + "' (expected 1, h, h2, hv, hv2, h2hv or T0..T5)");
  return s;
}

inline Family family_option(const std::string& text) {
  auto f = parse_family(text);
  if (!f) throw UsageError("unknown family '" + text + "' (expected N, C or E)");
  return *f;
}

inline EquationSet equations_option(const std::vector<std::string>& literal) {
  EquationSet set = EquationSet::reference();
  for (const auto& name : literal) {
    bool found = false;
    for (EquationId id : kRecursionEquations) {
      if (equation_name(id) == name) {
        set.with(id, Transcription::literal);
        found = true;
      }
    }
    if (!found) throw UsageError("unknown equation '" + name + "'");
  }
  return set;
}

}  // namespace detail

/// Runs the command line `args` (without the program name).
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic numbers of rational plane curves in exact arithmetic", "charnum"};
  app.require_subcommand(1);

  EngineConfig config;
  std::string cache_path;
  std::vector<std::string> literal;
  app.add_option("--max-degree", config.max_degree, "Largest degree for N and E")->capture_default_str()
      ->check(CLI::Range(1, 64));
  app.add_option("--max-cusp-degree", config.max_cusp_degree, "Largest degree for C")->capture_default_str()
      ->check(CLI::Range(2, 64));
  app.add_option("--cache", cache_path, "Cache file read before and written after compute/table")
      ->envname("CHARNUM_CACHE");
  app.add_option("--literal", literal, "Use the literal transcription of the named equation (repeatable)");

  auto* compute = app.add_subcommand("compute", "Print one invariant");
  std::string family_text;
  std::string class_text;
  int d = 0, a = 0, b = 0, c = 0;
  compute->add_option("family", family_text, "N, C or E")->required();
  compute->add_option("d", d, "Degree")->required();
  compute->add_option("--a", a, "Point conditions")->required();
  compute->add_option("--b", b, "Tangency conditions")->required();
  compute->add_option("--c", c, "Flag conditions")->required();
  compute->add_option("--class", class_text, "Class at the special point: 1, h, h2, hv, hv2, h2hv");

  auto* table = app.add_subcommand("table", "Print a full table");
  std::string format_text = "markdown";
  unsigned parallel = 0;
  table->add_option("family", family_text, "N, C or E")->required();
  table->add_option("d", d, "Degree")->required();
  table->add_option("--class", class_text, "Class at the special point");
  table->add_option("--format", format_text, "markdown, csv or json")->capture_default_str();
  table->add_option("--parallel", parallel, "Worker threads sharing one store (0 = serial)");

  auto* verify = app.add_subcommand("verify", "Recompute the reference tables");
  std::string fixture_dir = CHARNUM_DEFAULT_FIXTURE_DIR;
  bool strict = false;
  std::optional<std::uint64_t> shuffle;
  verify->add_option("--fixtures", fixture_dir, "Fixture directory")->capture_default_str();
  verify->add_flag("--strict", strict, "Treat declared errata as failures");
  verify->add_option("--shuffle", shuffle, "Evaluate keys in a seeded random order");

  auto* selfcheck = app.add_subcommand("selfcheck", "Structural identities and oracle checks");

  auto* cache = app.add_subcommand("cache", "Export or import the invariant cache");
  cache->require_subcommand(1);
  auto* cache_export_cmd = cache->add_subcommand("export", "Fill tables and write them as JSON lines");
  auto* cache_import_cmd = cache->add_subcommand("import", "Validate a cache file");
  std::string cache_file;
  int through = 4;
  bool no_zeros = false;
  cache_export_cmd->add_option("path", cache_file, "Output file")->required();
  cache_export_cmd->add_option("--degree", through, "Fill N tables d <= degree and C tables 2 <= d <= degree")
      ->capture_default_str();
  cache_export_cmd->add_flag("--no-zeros", no_zeros, "Omit zero values");
  cache_import_cmd->add_option("path", cache_file, "Input file")->required();

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.equations = detail::equations_option(literal);
    const bool use_cache = !cache_path.empty() && literal.empty();

    Engine engine(config);
    auto warm = [&] {
      if (use_cache && std::filesystem::exists(cache_path)) load_into(engine.store(), cache_import(cache_path));
    };
    auto persist = [&] {
      if (use_cache) cache_export(engine.store().entries(), cache_path);
    };

    if (*compute) {
      const Family family = detail::family_option(family_text);
      const InvariantKey key{family, d, a, b, c, detail::class_option(family, class_text)};
      if (!is_valid(key)) throw detail::UsageError("invalid key " + key.to_string() + ": " + validity_rule(family, key.cls));
      warm();
      out << engine.compute(key) << "\n";
      persist();
      return kExitOk;
    }

    if (*table) {
      const Family family = detail::family_option(family_text);
      const auto cls = detail::class_option(family, class_text);
      const auto format = parse_format(format_text);
      if (!format) throw detail::UsageError("unknown format '" + format_text + "'");
      if (d < 1) throw detail::UsageError("degree must be >= 1");
      InvariantTable t;
      if (parallel > 0) {
        SharedMemoStore shared;
        if (use_cache && std::filesystem::exists(cache_path)) load_into(shared, cache_import(cache_path));
        t = build_table_parallel(family, d, cls, shared, config, parallel);
        if (use_cache) cache_export(shared.entries(), cache_path);
      } else {
        warm();
        t = build_table(family, d, cls, engine.evaluator());
        persist();
      }
      out << render_table(t, *format);
      return kExitOk;
    }

    if (*verify) {
      const auto fixtures = load_fixtures(fixture_dir);
      warm();
      const GoldenReport report = verify_goldens(fixtures, engine.evaluator(), shuffle);
      out << report.to_text();
      return (strict ? report.verbatim() : report.passed()) ? kExitOk : kExitFailure;
    }

    if (*selfcheck) {
      bool ok = true;
      for (const auto& r : run_selfcheck(config)) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        ok = ok && r.passed;
      }
      return ok ? kExitOk : kExitFailure;
    }

    if (*cache_export_cmd) {
      if (through < 1) throw detail::UsageError("--degree must be >= 1");
      // Table cells are inserted explicitly so base cases appear in the file too.
      auto fill = [&](Family f, int dd, std::optional<CondClass> s) {
        const InvariantTable t = build_table(f, dd, s, engine.evaluator());
        for (const auto& [ac, v] : t.entries) engine.store().insert(t.key(ac.first, ac.second), v);
      };
      for (int dd = 1; dd <= through; ++dd) fill(Family::N, dd, std::nullopt);
      for (int dd = 2; dd <= std::min(through, config.max_cusp_degree); ++dd) {
        for (CondClass s : {CondClass::h2, CondClass::h, CondClass::one}) fill(Family::C, dd, s);
      }
      const auto entries = engine.store().entries();
      cache_export(entries, cache_file, CacheOptions{!no_zeros});
      out << "exported " << entries.size() << " memoized values to " << cache_file << "\n";
      return kExitOk;
    }

    if (*cache_import_cmd) {
      const auto entries = cache_import(cache_file);
      out << "imported " << entries.size() << " records from " << cache_file << "\n";
      return kExitOk;
    }
  } catch (const detail::UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegreeGuardExceeded& e) {
    err << "error: " << e.what() << " (raise --max-degree / --max-cusp-degree)\n";
    return kExitUsage;
  } catch (const NotComputable& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

inline int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, out, err);
}

}  // namespace charnum

#endif  // CHARNUM_CLI_HPP
