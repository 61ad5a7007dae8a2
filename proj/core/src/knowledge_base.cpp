#include "plr/knowledge_base.hpp"

#include <algorithm>

#include "plr/error.hpp"

namespace plr {
namespace {

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

SignatureViolation::SignatureViolation(std::vector<std::string> names)
    : Error("roles or properties shared with the oracle: " + join(names)), names_(std::move(names)) {}

void Signature::merge(const Signature& other) {
  concepts.insert(other.concepts.begin(), other.concepts.end());
  roles.insert(other.roles.begin(), other.roles.end());
  properties.insert(other.properties.begin(), other.properties.end());
}

void MainKB::add_range(Symbol role, Symbol concept_name) {
  const std::pair<Symbol, Symbol> axiom{role, concept_name};
  if (std::find(range.begin(), range.end(), axiom) == range.end()) range.push_back(axiom);
}

void MainKB::add_disjoint(Symbol a, Symbol b) { disjointness.emplace(std::min(a, b), std::max(a, b)); }

KBPartition partition(const MainKB& kb) {
  KBPartition p;
  p.k_minus.func = kb.func;
  p.k_minus.range = kb.range;
  p.shifted.inclusions = kb.inclusions;
  p.shifted.disjointness = kb.disjointness;
  return p;
}

MainKB merge(const KBPartition& p) {
  MainKB kb = p.k_minus;
  for (Symbol f : p.shifted.func) kb.add_func(f);
  for (const auto& [r, a] : p.shifted.range) kb.add_range(r, a);
  kb.inclusions.insert(p.shifted.inclusions.begin(), p.shifted.inclusions.end());
  kb.disjointness.insert(p.shifted.disjointness.begin(), p.shifted.disjointness.end());
  return kb;
}

namespace {

void collect(const Concept& c, Signature& sig) {
  switch (c.kind()) {
    case ConceptKind::Name:
      sig.concepts.insert(c.symbol());
      break;
    case ConceptKind::Bottom:
      break;
    case ConceptKind::Interval:
      sig.properties.insert(c.symbol());
      break;
    case ConceptKind::Exists:
      sig.roles.insert(c.symbol());
      collect(c.filler(), sig);
      break;
    case ConceptKind::And:
      for (const auto& op : c.operands()) collect(op, sig);
      break;
  }
}

}  // namespace

Signature signature(const Concept& c) {
  Signature sig;
  collect(c, sig);
  return sig;
}

Signature signature(const FullConcept& c) {
  Signature sig;
  for (const auto& d : c.disjuncts()) collect(d, sig);
  return sig;
}

Signature signature(const MainKB& kb) {
  Signature sig;
  sig.roles.insert(kb.func.begin(), kb.func.end());
  for (const auto& [r, a] : kb.range) {
    sig.roles.insert(r);
    sig.concepts.insert(a);
  }
  for (const auto& [a, b] : kb.inclusions) {
    sig.concepts.insert(a);
    sig.concepts.insert(b);
  }
  for (const auto& [a, b] : kb.disjointness) {
    sig.concepts.insert(a);
    sig.concepts.insert(b);
  }
  return sig;
}

std::vector<std::string> SignatureReport::names() const {
  std::vector<std::string> out;
  out.reserve(shared_roles.size());
  for (Symbol s : shared_roles) out.push_back(s.str());
  std::sort(out.begin(), out.end());
  return out;
}

SignatureReport validate_instance(const Signature& main_and_query, const Signature& oracle) {
  auto occurs = [](const Signature& sig, Symbol s) {
    return sig.concepts.contains(s) || sig.roles.contains(s) || sig.properties.contains(s);
  };
  std::set<Symbol> shared;
  for (const auto* side : {&main_and_query.roles, &main_and_query.properties}) {
    for (Symbol s : *side) {
      if (occurs(oracle, s)) shared.insert(s);
    }
  }
  for (const auto* side : {&oracle.roles, &oracle.properties}) {
    for (Symbol s : *side) {
      if (occurs(main_and_query, s)) shared.insert(s);
    }
  }
  return SignatureReport{{shared.begin(), shared.end()}};
}

}  // namespace plr
