#include "plr/sts.hpp"

#include "plr/error.hpp"

namespace plr {
namespace {

bool check(const Concept& c, const Concept& d, QueryPath& oracle) {
  if (c.is_bottom()) return true;
  switch (d.kind()) {
    case ConceptKind::Name:
      return oracle.ask(OracleQuery(top_level_names(c), d.symbol()));
    case ConceptKind::Interval:
      for (const auto& atom : c.conjuncts()) {
        if (atom.kind() == ConceptKind::Interval && atom.symbol() == d.symbol() && d.range().contains(atom.range())) {
          return true;
        }
      }
      return false;
    case ConceptKind::Exists:
      for (const auto& atom : c.conjuncts()) {
        if (atom.kind() == ConceptKind::Exists && atom.symbol() == d.symbol() &&
            check(atom.filler(), d.filler(), oracle)) {
          return true;
        }
      }
      return false;
    case ConceptKind::And:
      for (const auto& part : d.operands()) {
        if (!check(c, part, oracle)) return false;
      }
      return true;
    case ConceptKind::Bottom:
      return false;
  }
  return false;
}

}  // namespace

bool sts_check(const Concept& c, const Concept& d, QueryPath& oracle) {
  if (d.depth() > kMaxStructuralDepth) {
    throw ResourceLimit("structural check exceeds depth cap of " + std::to_string(kMaxStructuralDepth));
  }
  return check(c, d, oracle);
}

bool sts_check(const Concept& c, const Concept& d, const Oracle& oracle, QueryCache* cache) {
  QueryPath path(oracle, cache);
  return sts_check(c, d, path);
}

bool is_elementary(const Concept& c, const Concept& d, const Normalizer& normalizer, QueryPath& oracle) {
  return interval_safe(c, FullConcept(d)) && normalizer.is_normalized(c, oracle);
}

}  // namespace plr
