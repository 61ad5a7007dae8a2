#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "plr/concept.hpp"
#include "plr/knowledge_base.hpp"
#include "plr/normalizer.hpp"
#include "plr/oracle.hpp"

namespace plr {

/// Tree-shaped canonical model of a normalized simple concept. Node 0 is the
/// distinguished element.
struct PointedModel {
  struct Node {
    std::vector<Symbol> names;                                // top-level names of the defining subconcept
    std::vector<std::pair<Symbol, std::size_t>> children;     // (role, child node)
    std::map<Symbol, std::vector<Interval>> values;           // property -> union of intervals
  };

  std::vector<Node> nodes;

  static constexpr std::size_t root = 0;
};

/// Builds the canonical model of `c` w.r.t. K⁻ (through `normalizer`) and an
/// oracle holding the shifted axioms. Throws std::invalid_argument when `c`
/// is ⊥ or not normalized.
PointedModel build_canonical(const Concept& c, const Normalizer& normalizer, const Oracle& oracle);

struct EvalOptions {
  /// Throw std::logic_error when an interval atom meets a value set it is
  /// neither contained in nor disjoint from.
  bool check_interval_safety = false;
};

/// Satisfaction of `d` at `node`. Names are decided by asking the oracle
/// whether the node's names entail them; intervals hold when some value
/// interval intersects them.
bool eval_concept(const PointedModel& m, std::size_t node, const Concept& d, const Oracle& oracle,
                  EvalOptions options = {});

/// Reference decision of K ∪ O ⊨ lhs ⊑ rhs by canonical models. Uncached and
/// slow; meant for test-scale instances.
bool ref_decide(const MainKB& main, const Oracle& oracle, const FullConcept& lhs, const FullConcept& rhs,
                EvalOptions options = {});

}  // namespace plr
