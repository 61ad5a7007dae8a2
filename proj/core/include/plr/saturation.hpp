#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "plr/horn.hpp"
#include "plr/symbol.hpp"

namespace plr {

struct SaturationOptions {
  /// Upper bound on derived subsumer facts plus role links.
  std::size_t max_facts = 100'000'000;
};

/// Saturated closure of an ELH⊥-style Horn ontology.
///
/// Completion rules, applied to a least fixpoint:
///   init  S(X) = {X, Top}
///   R1    A1 ∈ S(X), A2 ∈ S(X), A1 ⊓ A2 ⊑ B    =>  B ∈ S(X)   (unary A ⊑ B alike)
///   R2    A ∈ S(X), A ⊑ ∃r.B                    =>  (X,B) ∈ R(r)
///   R3    (X,Y) ∈ R(r), A ∈ S(Y), ∃r.A ⊑ B      =>  B ∈ S(X)
///   R4    (X,Y) ∈ R(r), Bot ∈ S(Y)              =>  Bot ∈ S(X)
///   R5    (X,Y) ∈ R(r), r ⊑ s                   =>  (X,Y) ∈ R(s)
///
/// Immutable once built. Conjunctive queries saturate a private overlay for a
/// fresh name and never touch the shared closure, so concurrent queries are safe.
class SaturationIndex {
 public:
  /// Throws ResourceLimit when more than `options.max_facts` facts are derived.
  static SaturationIndex build(const OracleOntology& ontology, SaturationOptions options = {});

  /// ⊓lhs ⊑ rhs, with the empty conjunction read as Top. `rhs` may be Bot.
  bool entails(std::span<const Symbol> lhs, Symbol rhs) const;
  /// ⊓lhs ⊑ ⊔rhs; convex, so true iff ⊓lhs is unsatisfiable or one disjunct is entailed.
  bool entails_any(std::span<const Symbol> lhs, std::span<const Symbol> rhs) const;
  bool unsatisfiable(std::span<const Symbol> lhs) const;

  /// S(X) as symbols, sorted. Names outside the ontology get {X} ∪ S(Top).
  std::vector<Symbol> subsumers(Symbol x) const;
  /// Named classes Y with X ∈ S(Y), sorted; excludes Top and Bot.
  std::vector<Symbol> subsumees(Symbol x) const;
  /// Derived pairs of R(role), sorted.
  std::vector<std::pair<Symbol, Symbol>> successors(Symbol role) const;

  bool knows(Symbol x) const { return node_of_.contains(x); }
  /// Concept names of the ontology, excluding Top and Bot, in node order.
  std::vector<Symbol> concept_names() const;
  /// Names X with Bot ∈ S(X), excluding Bot itself.
  std::vector<Symbol> inconsistent_names() const;
  std::size_t fact_count() const { return fact_count_; }

 private:
  using NodeId = std::uint32_t;
  using RoleId = std::uint32_t;

  struct Rules {
    std::vector<std::vector<NodeId>> told;                                 // A -> B for A ⊑ B
    std::vector<std::vector<std::pair<NodeId, NodeId>>> conj;              // A -> (B, C) for A ⊓ B ⊑ C
    std::vector<std::vector<std::pair<RoleId, NodeId>>> supex;             // A -> (r, B) for A ⊑ ∃r.B
    std::unordered_map<std::uint64_t, std::vector<NodeId>> subex;          // (r, A) -> B for ∃r.A ⊑ B
    std::vector<std::vector<RoleId>> super_roles;                         // reflexive-transitive
  };

  static std::uint64_t key(RoleId r, NodeId a) { return (static_cast<std::uint64_t>(r) << 32) | a; }
  const std::vector<NodeId>* subex_for(RoleId r, NodeId a) const;
  bool has(NodeId x, NodeId a) const;
  std::vector<NodeId> overlay_closure(std::span<const Symbol> lhs, std::vector<Symbol>& foreign) const;

  std::vector<Symbol> symbols_;  // node -> symbol
  std::unordered_map<Symbol, NodeId> node_of_;
  std::vector<Symbol> roles_;
  std::unordered_map<Symbol, RoleId> role_of_;
  NodeId top_ = 0;
  NodeId bot_ = 0;
  Rules rules_;
  std::vector<std::vector<NodeId>> closure_;                       // S(X), sorted node ids
  std::vector<std::vector<std::pair<RoleId, NodeId>>> links_;      // X -> (r, Y)
  std::vector<std::vector<NodeId>> subsumees_;
  std::size_t fact_count_ = 0;
};

}  // namespace plr
