#pragma once

#include <chrono>
#include <ostream>

#include "json.hpp"
#include "plr/engine.hpp"

namespace plr::cli {

inline double to_ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

/// The fixed per-check field set shared by `check --stats json` and bench records.
inline nlohmann::ordered_json stats_json(const CheckResult& r) {
  return {
      {"answer", r.answer},
      {"wall_ms", to_ms(r.stats.wall_time)},
      {"oracle_calls", r.stats.oracle_calls},
      {"cache_hits", r.stats.cache_hits},
      {"disj_before", r.stats.disjuncts_before_norm},
      {"disj_after_norm", r.stats.disjuncts_after_norm},
      {"disj_after_split", r.stats.disjuncts_after_split},
      {"ni", r.stats.ni},
  };
}

inline void print_text_stats(std::ostream& out, const CheckResult& r) {
  out << "wall_ms: " << to_ms(r.stats.wall_time) << '\n'
      << "oracle_calls: " << r.stats.oracle_calls << '\n'
      << "cache_hits: " << r.stats.cache_hits << '\n'
      << "disj_before: " << r.stats.disjuncts_before_norm << '\n'
      << "disj_after_norm: " << r.stats.disjuncts_after_norm << '\n'
      << "disj_after_split: " << r.stats.disjuncts_after_split << '\n'
      << "ni: " << r.stats.ni << '\n';
}

}  // namespace plr::cli
