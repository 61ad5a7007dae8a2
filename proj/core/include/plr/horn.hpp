#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "plr/knowledge_base.hpp"
#include "plr/symbol.hpp"

namespace plr {

/// Normal-form Horn axioms understood by the built-in oracle. `Top` and `Bot`
/// may appear as concept names.
struct HornAxiom {
  enum class Kind : std::uint8_t {
    Sub,      // A ⊑ B
    SubConj,  // A ⊓ B ⊑ C
    SubEx,    // ∃R.A ⊑ B
    SupEx,    // A ⊑ ∃R.B
    SubRole,  // R ⊑ S
    Disj,     // A ⊓ B ⊑ ⊥
    Bot,      // A ⊑ ⊥
  };

  Kind kind;
  Symbol a;  // per kind, in .horn argument order
  Symbol b;
  Symbol c;

  static HornAxiom sub(Symbol a, Symbol b) { return {Kind::Sub, a, b, {}}; }
  static HornAxiom subconj(Symbol a, Symbol b, Symbol c) { return {Kind::SubConj, a, b, c}; }
  static HornAxiom subex(Symbol role, Symbol a, Symbol b) { return {Kind::SubEx, role, a, b}; }
  static HornAxiom supex(Symbol a, Symbol role, Symbol b) { return {Kind::SupEx, a, role, b}; }
  static HornAxiom subrole(Symbol r, Symbol s) { return {Kind::SubRole, r, s, {}}; }
  static HornAxiom disj(Symbol a, Symbol b) { return {Kind::Disj, a, b, {}}; }
  static HornAxiom bottom(Symbol a) { return {Kind::Bot, a, {}, {}}; }

  bool mentions_roles() const { return kind == Kind::SubEx || kind == Kind::SupEx || kind == Kind::SubRole; }

  friend bool operator==(const HornAxiom&, const HornAxiom&) = default;
};

struct OracleOntology {
  std::vector<HornAxiom> axioms;

  void add(const HornAxiom& ax) { axioms.push_back(ax); }
  bool role_free() const;
  /// Concept names (including Top/Bot when mentioned) and roles.
  Signature signature() const;
  /// Concept names in first-occurrence order, excluding Top and Bot.
  std::vector<Symbol> concept_names() const;
};

/// The `.horn` line for one axiom, e.g. `subex R A B`.
std::string to_line(const HornAxiom& ax);

/// Converts shifted main-KB axioms (inclusions, disjointness) to Horn axioms.
std::vector<HornAxiom> to_horn(const MainKB& shifted);

}  // namespace plr
