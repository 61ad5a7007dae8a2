#pragma once

#include <string>
#include <string_view>

#include "plr/concept.hpp"
#include "plr/horn.hpp"
#include "plr/knowledge_base.hpp"

namespace plr {

// Surface syntax
//
// Policies (.plp), s-expressions; `#` starts a line comment:
//   full   := simple | "(or" simple+ ")"
//   simple := NAME | "bot" | "(and" simple+ ")" | "(some" NAME simple ")"
//           | "(int" NAME NAT NAT ")"
//
// Main KB (.plkb), one axiom per line:
//   func N | range N N | sub N N | disj N N
//
// Oracle ontology (.horn), one axiom per line:
//   sub A B | subconj A B C | subex R A B | supex A R B | subrole R S
//   | disj A B | bot A
//
// NAME matches [A-Za-z_][A-Za-z0-9_.:-]*. All parsers stop at the first error
// and throw ParseError with a 1-based line and column.

FullConcept parse_policy(std::string_view text);
MainKB parse_main_kb(std::string_view text);
OracleOntology parse_oracle_ontology(std::string_view text);

/// Canonical text: single-operand conjunctions and single-disjunct unions are
/// written without their wrapper. `parse_policy(serialize_policy(c)) == c`.
std::string serialize_policy(const FullConcept& c);
std::string serialize_concept(const Concept& c);
std::string serialize_main_kb(const MainKB& kb);
std::string serialize_oracle_ontology(const OracleOntology& o);

/// True if `s` is a syntactically valid NAME.
bool is_valid_name(std::string_view s);

}  // namespace plr
