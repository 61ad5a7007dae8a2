#pragma once

#include <cstdint>

#include "plr/memo_cache.hpp"
#include "plr/oracle.hpp"

namespace plr {

using QueryCache = MemoCache<OracleQuery, bool>;

/// Oracle traffic attributed to one unit of work.
struct QueryCounters {
  std::uint64_t oracle_calls = 0;
  std::uint64_t cache_hits = 0;

  std::uint64_t attempts() const { return oracle_calls + cache_hits; }
  QueryCounters& operator+=(const QueryCounters& o) {
    oracle_calls += o.oracle_calls;
    cache_hits += o.cache_hits;
    return *this;
  }
};

/// Routes queries through an optional cache and counts what happened locally,
/// so concurrent checks get exact per-check figures.
class QueryPath {
 public:
  QueryPath(const Oracle& oracle, QueryCache* cache) : oracle_(oracle), cache_(cache) {}

  bool ask(const OracleQuery& q) {
    if (cache_ == nullptr) {
      ++counters_.oracle_calls;
      return oracle_.query(q);
    }
    bool hit = false;
    const bool answer = cache_->get_or_compute(q, [&] { return oracle_.query(q); }, hit);
    if (hit) {
      ++counters_.cache_hits;
    } else {
      ++counters_.oracle_calls;
    }
    return answer;
  }

  const Oracle& oracle() const noexcept { return oracle_; }
  const QueryCounters& counters() const noexcept { return counters_; }

 private:
  const Oracle& oracle_;
  QueryCache* cache_;
  QueryCounters counters_;
};

}  // namespace plr
