#include "plr/refcheck.hpp"

#include <stdexcept>

#include "plr/horn.hpp"

namespace plr {
namespace {

std::size_t build(PointedModel& m, const Concept& c) {
  const std::size_t id = m.nodes.size();
  m.nodes.emplace_back();
  for (const auto& atom : c.conjuncts()) {
    switch (atom.kind()) {
      case ConceptKind::Name:
        if (!atom.symbol().is_top()) m.nodes[id].names.push_back(atom.symbol());
        break;
      case ConceptKind::Interval:
        m.nodes[id].values[atom.symbol()].push_back(atom.range());
        break;
      case ConceptKind::Exists: {
        const std::size_t child = build(m, atom.filler());
        m.nodes[id].children.emplace_back(atom.symbol(), child);
        break;
      }
      case ConceptKind::Bottom:
        throw std::invalid_argument("canonical model of an unsatisfiable concept");
      case ConceptKind::And:
        throw std::logic_error("nested conjunction in canonical concept");
    }
  }
  return id;
}

}  // namespace

PointedModel build_canonical(const Concept& c, const Normalizer& normalizer, const Oracle& oracle) {
  if (c.is_bottom()) throw std::invalid_argument("canonical model of ⊥");
  QueryPath path(oracle, nullptr);
  if (!normalizer.is_normalized(c, path)) throw std::invalid_argument("canonical model of a non-normalized concept");
  PointedModel m;
  build(m, c);
  return m;
}

bool eval_concept(const PointedModel& m, std::size_t node, const Concept& d, const Oracle& oracle,
                  EvalOptions options) {
  const auto& n = m.nodes.at(node);
  switch (d.kind()) {
    case ConceptKind::Name:
      return oracle.query(OracleQuery(n.names, d.symbol()));
    case ConceptKind::Bottom:
      return false;
    case ConceptKind::Interval: {
      auto it = n.values.find(d.symbol());
      if (it == n.values.end()) return false;
      bool meets = false;
      for (const auto& v : it->second) {
        const bool hit = v.intersects(d.range());
        if (options.check_interval_safety && hit && !d.range().contains(v)) {
          throw std::logic_error("interval atom overlaps a value set without containing it");
        }
        meets = meets || hit;
      }
      return meets;
    }
    case ConceptKind::Exists:
      for (const auto& [role, child] : n.children) {
        if (role == d.symbol() && eval_concept(m, child, d.filler(), oracle, options)) return true;
      }
      return false;
    case ConceptKind::And:
      for (const auto& part : d.operands()) {
        if (!eval_concept(m, node, part, oracle, options)) return false;
      }
      return true;
  }
  return false;
}

bool ref_decide(const MainKB& main, const Oracle& oracle, const FullConcept& lhs, const FullConcept& rhs,
                EvalOptions options) {
  KBPartition parts = partition(main);
  const auto shifted = to_horn(parts.shifted);
  const Oracle loaded = oracle.with_shifted(shifted);
  const Normalizer normalizer(parts.k_minus);
  QueryPath path(loaded, nullptr);
  NormalizationStats stats;
  const FullConcept normalized = normalizer.normalize_full(lhs, path, stats);
  const FullConcept split = split_intervals(normalized, rhs);
  for (const auto& c : split.disjuncts()) {
    if (c.is_bottom()) continue;
    const PointedModel m = build_canonical(c, normalizer, loaded);
    bool covered = false;
    for (const auto& d : rhs.disjuncts()) {
      if (eval_concept(m, PointedModel::root, d, loaded, options)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace plr
