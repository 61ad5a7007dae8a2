#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plr/concept.hpp"
#include "plr/horn.hpp"
#include "plr/knowledge_base.hpp"

namespace plr::test {

/// Name pools for one random instance. Main-KB roles/properties and oracle
/// roles never overlap, so instances satisfy signature separation.
struct Pools {
  std::vector<Symbol> names;
  std::vector<Symbol> roles;
  std::vector<Symbol> props;
  std::vector<Symbol> oracle_roles;
};

Pools make_pools(std::size_t names, std::size_t roles, std::size_t props, std::size_t oracle_roles);

struct Shape {
  std::size_t max_depth = 3;
  std::size_t max_width = 3;
  std::size_t max_intervals = 2;  // per simple concept
  std::uint64_t max_value = 20;
  double bottom = 0.0;            // chance of a ⊥ conjunct
  double empty_interval = 0.05;   // chance an interval has lo > hi
};

struct Instance {
  MainKB kb;
  OracleOntology oracle;
  FullConcept lhs;
  FullConcept rhs;
};

struct InstanceParams {
  std::size_t names = 10;
  std::size_t roles = 3;
  std::size_t props = 2;
  std::size_t oracle_roles = 2;
  std::size_t oracle_axioms = 20;
  bool oracle_role_free = false;
  std::size_t max_disjuncts = 3;
  Shape shape;
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  Concept simple(const Pools& pools, const Shape& shape);
  FullConcept full(const Pools& pools, const Shape& shape, std::size_t max_disjuncts);
  /// Drops conjuncts and widens intervals, so `c` is subsumed by the result
  /// (unless a name is swapped, which happens with probability `swap`).
  Concept weaken(const Concept& c, const Pools& pools, double swap = 0.0);
  /// Random ontology over the pools; `role_free` restricts to sub/subconj/disj/bot.
  OracleOntology ontology(const Pools& pools, std::size_t axioms, bool role_free);
  /// func/range over the pools plus a few inclusions and disjointness axioms.
  MainKB kb(const Pools& pools);
  Instance instance(const InstanceParams& p);

 private:
  Concept simple_at(const Pools& pools, const Shape& shape, std::size_t depth, std::size_t& intervals);
  Interval interval(const Shape& shape);

  std::mt19937_64 rng_;
};

}  // namespace plr::test
