#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plr/concept.hpp"
#include "plr/symbol.hpp"

namespace plr {

/// Names occurring in an expression, classified by syntactic position.
struct Signature {
  std::set<Symbol> concepts;
  std::set<Symbol> roles;
  std::set<Symbol> properties;

  bool empty() const { return concepts.empty() && roles.empty() && properties.empty(); }
  void merge(const Signature& other);
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// The main knowledge base: functionality, range, name inclusion and name
/// disjointness axioms, and nothing else.
struct MainKB {
  std::set<Symbol> func;                          // roles or concrete properties
  std::vector<std::pair<Symbol, Symbol>> range;   // (role, concept name)
  std::set<std::pair<Symbol, Symbol>> inclusions; // (sub, super)
  std::set<std::pair<Symbol, Symbol>> disjointness;  // unordered; stored as (min, max)

  void add_func(Symbol r) { func.insert(r); }
  void add_range(Symbol role, Symbol concept_name);
  void add_inclusion(Symbol sub, Symbol super) { inclusions.emplace(sub, super); }
  void add_disjoint(Symbol a, Symbol b);

  bool is_functional(Symbol r) const { return func.contains(r); }
  bool empty() const { return func.empty() && range.empty() && inclusions.empty() && disjointness.empty(); }
  std::size_t axiom_count() const { return func.size() + range.size() + inclusions.size() + disjointness.size(); }

  friend bool operator==(const MainKB&, const MainKB&) = default;
};

/// K⁻ keeps func/range axioms for the structural reasoner; the name-level
/// inclusion and disjointness axioms move to the oracle.
struct KBPartition {
  MainKB k_minus;
  MainKB shifted;
};

KBPartition partition(const MainKB& kb);

/// Reassembles a partition; `merge(partition(k)) == k`.
MainKB merge(const KBPartition& p);

Signature signature(const Concept& c);
Signature signature(const FullConcept& c);
/// func arguments are classified as roles: the axiom alone cannot tell a role
/// from a concrete property, and both count as non-concept names.
Signature signature(const MainKB& kb);

/// Result of checking that only concept names are shared with the oracle.
struct SignatureReport {
  std::vector<Symbol> shared_roles;  // roles or properties in both signatures, sorted

  bool ok() const { return shared_roles.empty(); }
  std::vector<std::string> names() const;
};

/// Compares (main ∪ query) against the oracle signature. A name counts as a
/// violation when it is used as a role or property on either side and occurs
/// anywhere in the other.
SignatureReport validate_instance(const Signature& main_and_query, const Signature& oracle);

}  // namespace plr
