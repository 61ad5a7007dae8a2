#include "plr/engine.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "plr/error.hpp"
#include "plr/horn.hpp"
#include "plr/sts.hpp"

namespace plr {

CheckStats& CheckStats::operator+=(const CheckStats& o) {
  oracle_calls += o.oracle_calls;
  cache_hits += o.cache_hits;
  norm_oracle_calls += o.norm_oracle_calls;
  norm_cache_hits += o.norm_cache_hits;
  disjuncts_before_norm += o.disjuncts_before_norm;
  disjuncts_after_norm += o.disjuncts_after_norm;
  disjuncts_after_split += o.disjuncts_after_split;
  ni = std::max(ni, o.ni);
  wall_time += o.wall_time;
  return *this;
}

namespace {

struct NormalizedPolicy {
  FullConcept concept_;
  std::size_t ni;
};

}  // namespace

struct Engine::State {
  State(MainKB kminus, Oracle loaded, EngineConfig cfg)
      : k_minus(std::move(kminus)),
        normalizer(k_minus),
        oracle(std::move(loaded)),
        oracle_signature(oracle.signature()),
        config(cfg),
        rule7_cache(cfg.cache_capacity),
        sts_cache(cfg.cache_capacity),
        norm_cache(cfg.cache_capacity) {}

  MainKB k_minus;
  Normalizer normalizer;
  Oracle oracle;
  Signature oracle_signature;
  EngineConfig config;
  QueryCache rule7_cache;
  QueryCache sts_cache;
  MemoCache<FullConcept, NormalizedPolicy> norm_cache;

  mutable std::mutex totals_mutex;
  CheckStats totals;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;

  void record(const CheckStats* stats) {
    std::lock_guard lock(totals_mutex);
    if (stats == nullptr) {
      ++failures;
      return;
    }
    ++checks;
    totals += *stats;
  }
};

Engine::Engine(std::unique_ptr<State> state) : state_(std::move(state)) {}
Engine::Engine(Engine&&) noexcept = default;
Engine& Engine::operator=(Engine&&) noexcept = default;
Engine::~Engine() = default;

Engine Engine::build(const MainKB& main, const Oracle& oracle, EngineConfig config) {
  if (auto report = validate_instance(signature(main), oracle.signature()); !report.ok()) {
    throw SignatureViolation(report.names());
  }
  KBPartition parts = partition(main);
  const auto shifted = to_horn(parts.shifted);
  Oracle loaded = oracle.with_shifted(shifted);
  return Engine(std::make_unique<State>(std::move(parts.k_minus), std::move(loaded), config));
}

CheckResult Engine::check(const FullConcept& lhs, const FullConcept& rhs) const {
  State& s = *state_;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (s.config.validate_queries) {
      Signature query_sig = signature(lhs);
      query_sig.merge(signature(rhs));
      if (auto report = validate_instance(query_sig, s.oracle_signature); !report.ok()) {
        throw SignatureViolation(report.names());
      }
    }

    CheckStats stats;
    stats.disjuncts_before_norm = lhs.size();

    QueryPath norm_path(s.oracle, s.config.use_caches ? &s.rule7_cache : nullptr);
    std::optional<NormalizedPolicy> normalized;
    if (s.config.use_caches) {
      normalized = s.norm_cache.find(lhs);
      if (normalized) ++stats.norm_cache_hits;
    }
    if (!normalized) {
      NormalizationStats ns;
      FullConcept result = s.normalizer.normalize_full(lhs, norm_path, ns);
      std::size_t ni = 0;
      for (const auto& d : result.disjuncts()) ni = std::max(ni, interval_count(d));
      normalized = NormalizedPolicy{std::move(result), ni};
      if (s.config.use_caches) s.norm_cache.insert(lhs, *normalized);
    }
    stats.disjuncts_after_norm = normalized->concept_.size();
    stats.ni = normalized->ni;

    const FullConcept split = split_intervals(normalized->concept_, rhs, s.config.split);
    stats.disjuncts_after_split = split.size();

    QueryPath sts_path(s.oracle, s.config.use_caches ? &s.sts_cache : nullptr);
    bool answer = true;
    for (const auto& c : split.disjuncts()) {
      bool covered = false;
      for (const auto& d : rhs.disjuncts()) {
        if (s.config.debug_checks && !c.is_bottom()) {
          QueryPath debug_path(s.oracle, nullptr);
          if (!is_elementary(c, d, s.normalizer, debug_path)) {
            throw std::logic_error("structural check called on a non-elementary pair");
          }
        }
        if (sts_check(c, d, sts_path)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        answer = false;
        break;
      }
    }

    stats.norm_oracle_calls = norm_path.counters().oracle_calls;
    stats.oracle_calls = norm_path.counters().oracle_calls + sts_path.counters().oracle_calls;
    stats.cache_hits = norm_path.counters().cache_hits + sts_path.counters().cache_hits;
    stats.wall_time = std::chrono::steady_clock::now() - start;
    s.record(&stats);
    return {answer, stats};
  } catch (...) {
    s.record(nullptr);
    throw;
  }
}

BatchResult Engine::check_batch(std::span<const std::pair<FullConcept, FullConcept>> pairs, unsigned threads) const {
  BatchResult out;
  out.items.resize(pairs.size());
  auto run_one = [&](std::size_t i) {
    try {
      out.items[i].result = check(pairs[i].first, pairs[i].second);
    } catch (const std::exception& e) {
      out.items[i].error = e.what();
    }
  };
  if (threads <= 1 || pairs.size() <= 1) {
    for (std::size_t i = 0; i < pairs.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const unsigned n = std::min<std::size_t>(threads, pairs.size());
    workers.reserve(n);
    for (unsigned t = 0; t < n; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < pairs.size(); i = next.fetch_add(1)) run_one(i);
      });
    }
    for (auto& w : workers) w.join();
  }
  for (const auto& item : out.items) {
    if (item.result) {
      out.total += item.result->stats;
    } else {
      ++out.failures;
    }
  }
  return out;
}

EngineSnapshot Engine::stats_snapshot() const {
  EngineSnapshot snap;
  {
    std::lock_guard lock(state_->totals_mutex);
    snap.checks = state_->checks;
    snap.failures = state_->failures;
    snap.totals = state_->totals;
  }
  snap.rule7_cache_entries = state_->rule7_cache.size();
  snap.sts_cache_entries = state_->sts_cache.size();
  snap.norm_cache_entries = state_->norm_cache.size();
  return snap;
}

void Engine::clear_caches() {
  state_->rule7_cache.clear();
  state_->sts_cache.clear();
  state_->norm_cache.clear();
}

const MainKB& Engine::k_minus() const { return state_->k_minus; }
const Oracle& Engine::oracle() const { return state_->oracle; }
const Normalizer& Engine::normalizer() const { return state_->normalizer; }
const EngineConfig& Engine::config() const { return state_->config; }

}  // namespace plr
