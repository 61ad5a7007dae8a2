#pragma once

#include <span>

#include "plr/horn.hpp"
#include "plr/oracle.hpp"

namespace plr::test {

/// Entailment by a deliberately naive fixpoint: every completion rule is
/// re-applied to every node until a full pass adds nothing. Shares no code
/// with the saturation index.
bool naive_entails(const OracleOntology& onto, std::span<const Symbol> lhs, std::span<const Symbol> rhs);

inline bool naive_entails(const OracleOntology& onto, const OracleQuery& q) {
  return naive_entails(onto, q.lhs(), q.rhs());
}

}  // namespace plr::test
