#pragma once

#include <cstddef>

#include "plr/concept.hpp"
#include "plr/normalizer.hpp"
#include "plr/query_path.hpp"

namespace plr {

/// Depth cap on the right-hand side of a structural check.
inline constexpr std::size_t kMaxStructuralDepth = 10'000;

/// Structural subsumption with oracle access for elementary pairs: `c` is
/// normalized and the simple pair is interval safe.
///
///   c = ⊥                                   -> true
///   d = A       oracle(top-level names of c ⊑ A)   (no names: Top ⊑ A)
///   d = ∃f.[l,u]  some top-level ∃f.[l',u'] of c with l ≤ l' and u' ≤ u
///   d = ∃R.d'   some top-level ∃R.c' of c with sts(c', d')
///   d = d1 ⊓ d2 all conjuncts
///   otherwise   false
///
/// The precondition is not checked here; see `is_elementary`. Throws
/// ResourceLimit when `d` is deeper than kMaxStructuralDepth.
bool sts_check(const Concept& c, const Concept& d, QueryPath& oracle);

/// Convenience wrapper; `cache` may be null.
bool sts_check(const Concept& c, const Concept& d, const Oracle& oracle, QueryCache* cache = nullptr);

/// Debug validator for the sts_check precondition.
bool is_elementary(const Concept& c, const Concept& d, const Normalizer& normalizer, QueryPath& oracle);

}  // namespace plr
