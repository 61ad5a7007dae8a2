#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "plr/concept.hpp"
#include "plr/knowledge_base.hpp"
#include "plr/memo_cache.hpp"
#include "plr/normalizer.hpp"
#include "plr/oracle.hpp"
#include "plr/query_path.hpp"

namespace plr {

struct EngineConfig {
  /// Normalization-result cache plus the two oracle-query caches (rule 7
  /// phase and structural phase).
  bool use_caches = true;
  /// LRU bound per cache; 0 = unbounded.
  std::size_t cache_capacity = 0;
  SplitOptions split;
  /// Validate the elementary precondition of every structural check.
  bool debug_checks = false;
  /// Reject queries that use oracle roles or properties.
  bool validate_queries = true;
};

struct CheckStats {
  std::uint64_t oracle_calls = 0;       // queries that reached the oracle backend
  std::uint64_t cache_hits = 0;         // queries answered by an oracle-query cache
  std::uint64_t norm_oracle_calls = 0;  // share of oracle_calls issued by normalization
  std::uint64_t norm_cache_hits = 0;    // full-policy normalizations served from cache
  std::size_t disjuncts_before_norm = 0;
  std::size_t disjuncts_after_norm = 0;
  std::size_t disjuncts_after_split = 0;
  /// Largest number of interval atoms in a normalized lhs disjunct.
  std::size_t ni = 0;
  std::chrono::nanoseconds wall_time{0};

  std::uint64_t query_attempts() const { return oracle_calls + cache_hits; }
  CheckStats& operator+=(const CheckStats& o);
};

struct CheckResult {
  bool answer = false;
  CheckStats stats;
};

struct BatchItem {
  std::optional<CheckResult> result;  // empty when the check failed
  std::string error;
};

struct BatchResult {
  std::vector<BatchItem> items;  // in input order
  CheckStats total;              // over successful checks
  std::size_t failures = 0;
};

/// Monotone counters since construction.
struct EngineSnapshot {
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  CheckStats totals;
  std::size_t rule7_cache_entries = 0;
  std::size_t sts_cache_entries = 0;
  std::size_t norm_cache_entries = 0;
};

/// Compliance checker deciding K ∪ O ⊨ lhs ⊑ rhs.
///
/// Construction partitions K into K⁻ (func/range) and the shifted name-level
/// axioms, which are loaded into the oracle once. The engine is immutable
/// afterwards apart from its caches and counters; `check` may be called
/// concurrently.
class Engine {
 public:
  /// Throws SignatureViolation when K and O share roles or properties, and
  /// OracleFailure when the oracle refuses the shifted axioms.
  static Engine build(const MainKB& main, const Oracle& oracle, EngineConfig config = {});

  Engine(Engine&&) noexcept;
  Engine& operator=(Engine&&) noexcept;
  ~Engine();

  /// Throws SignatureViolation (query shares roles with the oracle),
  /// OracleFailure, ResourceLimit.
  CheckResult check(const FullConcept& lhs, const FullConcept& rhs) const;

  /// Maps `check` over `pairs`, on up to `threads` workers. Failures are
  /// reported per item and do not abort the batch.
  BatchResult check_batch(std::span<const std::pair<FullConcept, FullConcept>> pairs, unsigned threads = 1) const;

  EngineSnapshot stats_snapshot() const;
  void clear_caches();

  const MainKB& k_minus() const;
  const Oracle& oracle() const;
  const Normalizer& normalizer() const;
  const EngineConfig& config() const;

 private:
  struct State;
  explicit Engine(std::unique_ptr<State> state);
  std::unique_ptr<State> state_;
};

}  // namespace plr
