#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "plr/concept.hpp"
#include "plr/knowledge_base.hpp"
#include "plr/query_path.hpp"

namespace plr {

struct NormalizationStats {
  std::size_t disjuncts_before = 0;
  std::size_t disjuncts_after = 0;
  QueryCounters queries;
  /// Indexed by rule number 1..7; slot 0 unused.
  std::array<std::uint64_t, 8> rule_applications{};

  std::uint64_t total_rule_applications() const;
  NormalizationStats& operator+=(const NormalizationStats& o);
};

/// Exhaustive rewriting with the seven normalization rules w.r.t. K⁻ and an
/// oracle that already holds the shifted axioms:
///
///   1  ⊥ ⊓ D                    ~> ⊥
///   2  ∃R.⊥                     ~> ⊥
///   3  ∃f.[l,u]                 ~> ⊥                       if l > u
///   4  ∃R.D ⊓ ∃R.D' ⊓ D''       ~> ∃R.(D ⊓ D') ⊓ D''       if func(R)
///   5  ∃f.[l1,u1] ⊓ ∃f.[l2,u2]  ~> ∃f.[max l, min u]       if func(f)
///   6  ∃R.D ⊓ D'                ~> ∃R.(D ⊓ A) ⊓ D'         if range(R,A), A and ⊥ not conjuncts of D
///   7  A1 ⊓ … ⊓ An ⊓ D          ~> ⊥                       if O⁺ ⊨ A1 ⊓ … ⊓ An ⊑ ⊥
///
/// Rewriting is innermost-first: operands are normalized before the node that
/// contains them, and a conjunction applies 1, then 5 (and 3 on the merged
/// interval), then 4 (renormalizing the merged filler), then 7 on its names.
class Normalizer {
 public:
  explicit Normalizer(const MainKB& k_minus);

  Concept normalize(const Concept& c, QueryPath& oracle, NormalizationStats& stats) const;

  /// Disjunct-wise; ⊥ disjuncts are kept unless every disjunct is ⊥, in which
  /// case the result is the single disjunct ⊥.
  FullConcept normalize_full(const FullConcept& c, QueryPath& oracle, NormalizationStats& stats) const;

  /// True if no rule applies anywhere in `c`.
  bool is_normalized(const Concept& c, QueryPath& oracle) const;

  const MainKB& k_minus() const noexcept { return k_minus_; }

 private:
  class Run;
  MainKB k_minus_;
  std::unordered_map<Symbol, std::vector<Symbol>> ranges_;
};

struct NormalizeResult {
  Concept result;
  NormalizationStats stats;
};

/// Convenience wrapper; `cache` may be null.
NormalizeResult normalize(const Concept& c, const MainKB& k_minus, const Oracle& oracle, QueryCache* cache = nullptr);

struct SplitOptions {
  std::size_t max_disjuncts = 1'000'000;
};

/// splt(lhs, rhs): cuts every interval atom of `lhs` on property f at the
/// points {l', u'+1} of every f-atom anywhere in `rhs`, and expands each
/// disjunct into the product of its atoms' pieces. Properties are compared
/// only with themselves. Throws ResourceLimit past `max_disjuncts`.
FullConcept split_intervals(const FullConcept& lhs, const FullConcept& rhs, SplitOptions options = {});

/// Every interval atom of `lhs` is contained in or disjoint from every atom
/// of `rhs` on the same property.
bool interval_safe(const Concept& lhs, const FullConcept& rhs);
bool interval_safe(const FullConcept& lhs, const FullConcept& rhs);

}  // namespace plr
