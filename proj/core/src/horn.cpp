#include "plr/horn.hpp"

#include <algorithm>
#include <unordered_set>

namespace plr {

bool OracleOntology::role_free() const {
  return std::none_of(axioms.begin(), axioms.end(), [](const HornAxiom& ax) { return ax.mentions_roles(); });
}

Signature OracleOntology::signature() const {
  Signature sig;
  for (const auto& ax : axioms) {
    switch (ax.kind) {
      case HornAxiom::Kind::Sub:
      case HornAxiom::Kind::Disj:
        sig.concepts.insert(ax.a);
        sig.concepts.insert(ax.b);
        break;
      case HornAxiom::Kind::SubConj:
        sig.concepts.insert(ax.a);
        sig.concepts.insert(ax.b);
        sig.concepts.insert(ax.c);
        break;
      case HornAxiom::Kind::SubEx:
        sig.roles.insert(ax.a);
        sig.concepts.insert(ax.b);
        sig.concepts.insert(ax.c);
        break;
      case HornAxiom::Kind::SupEx:
        sig.concepts.insert(ax.a);
        sig.roles.insert(ax.b);
        sig.concepts.insert(ax.c);
        break;
      case HornAxiom::Kind::SubRole:
        sig.roles.insert(ax.a);
        sig.roles.insert(ax.b);
        break;
      case HornAxiom::Kind::Bot:
        sig.concepts.insert(ax.a);
        break;
    }
  }
  return sig;
}

std::vector<Symbol> OracleOntology::concept_names() const {
  std::vector<Symbol> out;
  std::unordered_set<Symbol> seen;
  auto add = [&](Symbol s) {
    if (s.is_top() || s.is_bot()) return;
    if (seen.insert(s).second) out.push_back(s);
  };
  for (const auto& ax : axioms) {
    switch (ax.kind) {
      case HornAxiom::Kind::Sub:
      case HornAxiom::Kind::Disj:
        add(ax.a);
        add(ax.b);
        break;
      case HornAxiom::Kind::SubConj:
        add(ax.a);
        add(ax.b);
        add(ax.c);
        break;
      case HornAxiom::Kind::SubEx:
        add(ax.b);
        add(ax.c);
        break;
      case HornAxiom::Kind::SupEx:
        add(ax.a);
        add(ax.c);
        break;
      case HornAxiom::Kind::SubRole:
        break;
      case HornAxiom::Kind::Bot:
        add(ax.a);
        break;
    }
  }
  return out;
}

std::string to_line(const HornAxiom& ax) {
  switch (ax.kind) {
    case HornAxiom::Kind::Sub:
      return "sub " + ax.a.str() + " " + ax.b.str();
    case HornAxiom::Kind::SubConj:
      return "subconj " + ax.a.str() + " " + ax.b.str() + " " + ax.c.str();
    case HornAxiom::Kind::SubEx:
      return "subex " + ax.a.str() + " " + ax.b.str() + " " + ax.c.str();
    case HornAxiom::Kind::SupEx:
      return "supex " + ax.a.str() + " " + ax.b.str() + " " + ax.c.str();
    case HornAxiom::Kind::SubRole:
      return "subrole " + ax.a.str() + " " + ax.b.str();
    case HornAxiom::Kind::Disj:
      return "disj " + ax.a.str() + " " + ax.b.str();
    case HornAxiom::Kind::Bot:
      return "bot " + ax.a.str();
  }
  return {};
}

std::vector<HornAxiom> to_horn(const MainKB& shifted) {
  std::vector<HornAxiom> out;
  out.reserve(shifted.inclusions.size() + shifted.disjointness.size());
  for (const auto& [a, b] : shifted.inclusions) out.push_back(HornAxiom::sub(a, b));
  for (const auto& [a, b] : shifted.disjointness) out.push_back(HornAxiom::disj(a, b));
  return out;
}

}  // namespace plr
