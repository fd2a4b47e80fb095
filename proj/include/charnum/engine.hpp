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

// Memoized recursion over N, C and E keys.
//
// A store maps keys to cells that are either in progress or done. Reaching an
// in-progress key on the same evaluation stack raises CycleDetected. The
// shared store also follows wait-for chains between tasks, so a cycle that
// crosses threads is reported instead of deadlocking.

#ifndef CHARNUM_ENGINE_HPP
#define CHARNUM_ENGINE_HPP

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "charnum/equations.hpp"
#include "charnum/invariant.hpp"
#include "charnum/rational.hpp"

namespace charnum {

struct TraceFrame {
  InvariantKey key;
  EquationId equation = EquationId::base;
};

/// The chain of keys being evaluated, outermost first.
using EvalTrace = std::vector<TraceFrame>;

inline std::string format_trace(const EvalTrace& trace) {
  std::ostringstream os;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) os << " -> ";
    os << trace[i].key << " [" << equation_name(trace[i].equation) << "]";
  }
  return os.str();
}

class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, EvalTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const EvalTrace& trace() const { return trace_; }

 private:
  EvalTrace trace_;
};

class CycleDetected : public EvaluationError {
 public:
  CycleDetected(InvariantKey reentered, EvalTrace trace)
      : EvaluationError("cycle detected: " + reentered.to_string() + " re-entered while in progress" +
                            (trace.empty() ? std::string() : "; trace: " + format_trace(trace)),
                        trace),
        reentered_(reentered) {}
  const InvariantKey& reentered() const { return reentered_; }

 private:
  InvariantKey reentered_;
};

class DegreeGuardExceeded : public EvaluationError {
 public:
  DegreeGuardExceeded(InvariantKey key, int limit, EvalTrace trace)
      : EvaluationError("degree guard exceeded: " + key.to_string() + " has degree " + std::to_string(key.d) +
                            " > " + std::to_string(limit),
                        std::move(trace)),
        key_(key),
        limit_(limit) {}
  const InvariantKey& key() const { return key_; }
  int limit() const { return limit_; }

 private:
  InvariantKey key_;
  int limit_;
};

class NotComputable : public EvaluationError {
 public:
  NotComputable(InvariantKey key, EvalTrace trace)
      : EvaluationError("not computable: no recursion determines " + key.to_string(), std::move(trace)),
        key_(key) {}
  const InvariantKey& key() const { return key_; }

 private:
  InvariantKey key_;
};

struct EngineConfig {
  int max_degree = 6;       ///< largest requested degree for N and E
  int max_cusp_degree = 5;  ///< largest degree for C
  EquationSet equations = EquationSet::reference();
};

/// Per-evaluator identity and stack, handed to the store.
struct TaskContext {
  std::uint64_t id = 0;
  EvalTrace stack;
};

inline std::uint64_t next_task_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

/// Single-threaded memo table.
class MemoStore {
 public:
  struct Cell {
    bool done = false;
    Rational value;
  };

  /// Returns the memoized value, or runs `compute` with the key marked in
  /// progress. The mark is removed if `compute` throws.
  template <class Compute>
  Rational resolve(const InvariantKey& key, TaskContext& ctx, Compute&& compute) {
    auto it = cells_.find(key);
    if (it != cells_.end()) {
      if (it->second.done) return it->second.value;
      throw CycleDetected(key, ctx.stack);
    }
    cells_.emplace(key, Cell{});
    Rational v;
    try {
      v = compute();
    } catch (...) {
      cells_.erase(key);
      throw;
    }
    Cell& cell = cells_.at(key);
    cell.done = true;
    cell.value = v;
    return v;
  }

  const Rational* find(const InvariantKey& key) const {
    auto it = cells_.find(key);
    return (it != cells_.end() && it->second.done) ? &it->second.value : nullptr;
  }
  bool in_progress(const InvariantKey& key) const {
    auto it = cells_.find(key);
    return it != cells_.end() && !it->second.done;
  }

  /// Marks a key in progress by hand. Used to exercise cycle handling.
  void mark_in_progress(const InvariantKey& key) { cells_[key] = Cell{}; }

  /// Seeds a finished value; a conflicting existing value is an error.
  void insert(const InvariantKey& key, const Rational& value) {
    auto [it, fresh] = cells_.try_emplace(key, Cell{true, value});
    if (!fresh && it->second.done && it->second.value != value) {
      throw std::invalid_argument("conflicting value for " + key.to_string());
    }
    it->second = Cell{true, value};
  }

  void clear() { cells_.clear(); }
  std::size_t size() const { return cells_.size(); }

  /// Finished entries in canonical key order.
  std::vector<std::pair<InvariantKey, Rational>> entries() const {
    std::vector<std::pair<InvariantKey, Rational>> out;
    for (const auto& [k, cell] : cells_) {
      if (cell.done) out.emplace_back(k, cell.value);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

 private:
  std::unordered_map<InvariantKey, Cell, InvariantKeyHash> cells_;
};

/// Thread-safe memo table. Concurrent requests for the same key compute it once.
class SharedMemoStore {
 public:
  template <class Compute>
  Rational resolve(const InvariantKey& key, TaskContext& ctx, Compute&& compute) {
    {
      std::unique_lock lock(mu_);
      for (;;) {
        auto it = cells_.find(key);
        if (it == cells_.end()) {
          cells_.emplace(key, Cell{false, Rational(), ctx.id});
          break;
        }
        if (it->second.done) return it->second.value;
        if (it->second.owner == ctx.id || waits_on(it->second.owner, ctx.id)) {
          throw CycleDetected(key, ctx.stack);
        }
        waiting_[ctx.id] = key;
        cv_.wait(lock);
        waiting_.erase(ctx.id);
      }
    }
    Rational v;
    try {
      v = compute();
    } catch (...) {
      std::lock_guard lock(mu_);
      cells_.erase(key);
      cv_.notify_all();
      throw;
    }
    std::lock_guard lock(mu_);
    Cell& cell = cells_.at(key);
    cell.done = true;
    cell.value = v;
    cv_.notify_all();
    return v;
  }

  const Rational* find(const InvariantKey& key) const {
    std::lock_guard lock(mu_);
    auto it = cells_.find(key);
    return (it != cells_.end() && it->second.done) ? &it->second.value : nullptr;
  }

  void insert(const InvariantKey& key, const Rational& value) {
    std::lock_guard lock(mu_);
    auto [it, fresh] = cells_.try_emplace(key, Cell{true, value, 0});
    if (!fresh && it->second.done && it->second.value != value) {
      throw std::invalid_argument("conflicting value for " + key.to_string());
    }
    it->second = Cell{true, value, 0};
    cv_.notify_all();
  }

  std::size_t size() const {
    std::lock_guard lock(mu_);
    return cells_.size();
  }

  std::vector<std::pair<InvariantKey, Rational>> entries() const {
    std::vector<std::pair<InvariantKey, Rational>> out;
    {
      std::lock_guard lock(mu_);
      for (const auto& [k, cell] : cells_) {
        if (cell.done) out.emplace_back(k, cell.value);
      }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

 private:
  struct Cell {
    bool done = false;
    Rational value;
    std::uint64_t owner = 0;
  };

  // True when `from` is (transitively) waiting on a key owned by `target`.
  bool waits_on(std::uint64_t from, std::uint64_t target) const {
    std::uint64_t t = from;
    for (std::size_t hops = 0; hops <= waiting_.size(); ++hops) {
      auto w = waiting_.find(t);
      if (w == waiting_.end()) return false;
      auto c = cells_.find(w->second);
      if (c == cells_.end() || c->second.done) return false;
      t = c->second.owner;
      if (t == target) return true;
    }
    return false;
  }

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::unordered_map<InvariantKey, Cell, InvariantKeyHash> cells_;
  std::unordered_map<std::uint64_t, InvariantKey> waiting_;
};

/// Evaluates invariants against a store. One evaluator per thread.
template <class Store>
class Evaluator {
 public:
  explicit Evaluator(Store& store, EngineConfig config = {}) : store_(store), config_(std::move(config)) {
    ctx_.id = next_task_id();
  }

  const EngineConfig& config() const { return config_; }
  Store& store() { return store_; }

  /// Value of `key`; 0 for keys that fail the dimension rule.
  /// Throws DegreeGuardExceeded when the key lies beyond the configured limits.
  Rational compute(const InvariantKey& key) {
    check_guard(key, requested_limit(key));
    return lookup(key);
  }

  Rational n(int d, int a, int b, int c) { return lookup(InvariantKey::n(d, a, b, c)); }
  Rational cusp(int d, int a, int b, int c, CondClass s) { return lookup(InvariantKey::cusp(d, a, b, c, s)); }
  Rational e(int d, int a, int b, int c, CondClass s) { return lookup(InvariantKey::e(d, a, b, c, s)); }

  /// Equation that determines `key`; base for base cases and E keys.
  static EquationId equation_for(const InvariantKey& key) {
    if (key.family == Family::N && key.d >= 2) return dispatch(key);
    if (key.family == Family::C && key.d >= 3) {
      if (auto eq = cusp_equation(*key.cls)) return *eq;
    }
    return EquationId::base;
  }

 private:
  int requested_limit(const InvariantKey& key) const {
    return key.family == Family::C ? config_.max_cusp_degree : config_.max_degree;
  }

  // Recursion may look one degree past max_degree for N (1122b and 2245 do).
  int internal_limit(const InvariantKey& key) const {
    return key.family == Family::C ? config_.max_cusp_degree : config_.max_degree + 1;
  }

  void check_guard(const InvariantKey& key, int limit) const {
    if (key.d > limit) throw DegreeGuardExceeded(key, limit, ctx_.stack);
  }

  Rational lookup(const InvariantKey& key) {
    if (!is_valid(key)) return Rational(0);
    check_guard(key, internal_limit(key));
    if (auto base = base_value(key)) return *base;
    if (key.family == Family::E) {
      return e_from_n(key.d, key.a, key.b, key.c, *key.cls,
                      [this](int d, int a, int b, int c) { return n(d, a, b, c); });
    }
    const EquationId eq = equation_for(key);
    if (eq == EquationId::base) throw NotComputable(key, ctx_.stack);
    return store_.resolve(key, ctx_, [&] {
      ctx_.stack.push_back({key, eq});
      struct Pop {
        EvalTrace& s;
        ~Pop() { s.pop_back(); }
      } pop{ctx_.stack};
      return evaluate(eq, key, *this, config_.equations);
    });
  }

  Store& store_;
  EngineConfig config_;
  TaskContext ctx_;
};

/// Convenience: a private store plus an evaluator over it.
class Engine {
 public:
  explicit Engine(EngineConfig config = {}) : eval_(store_, std::move(config)) {}
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  Rational compute(const InvariantKey& key) { return eval_.compute(key); }
  MemoStore& store() { return store_; }
  Evaluator<MemoStore>& evaluator() { return eval_; }
  const EngineConfig& config() const { return eval_.config(); }

 private:
  MemoStore store_;
  Evaluator<MemoStore> eval_;
};

}  // namespace charnum

#endif  // CHARNUM_ENGINE_HPP
