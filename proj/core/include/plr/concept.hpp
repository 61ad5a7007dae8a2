#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "plr/symbol.hpp"

namespace plr {

/// A closed range of naturals. `lo > hi` is representable and denotes the
/// empty interval; normalization rewrites such atoms to bottom.
struct Interval {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  constexpr bool empty() const noexcept { return lo > hi; }
  constexpr bool contains(const Interval& o) const noexcept { return lo <= o.lo && o.hi <= hi; }
  constexpr bool intersects(const Interval& o) const noexcept {
    return !empty() && !o.empty() && lo <= o.hi && o.lo <= hi;
  }

  friend constexpr bool operator==(const Interval&, const Interval&) = default;
  friend constexpr auto operator<=>(const Interval&, const Interval&) = default;
};

enum class ConceptKind : std::uint8_t { Name, Bottom, Interval, Exists, And };

/// A simple PL concept: `A | bot | ∃f.[l,u] | ∃R.C | C ⊓ D`.
///
/// Immutable and cheap to copy (shared node). Conjunctions are canonical on
/// construction: nested conjunctions are flattened, operands are sorted and
/// deduplicated, and a single-operand conjunction collapses to that operand.
/// The empty conjunction is the reserved name `Top`.
class Concept {
 public:
  static Concept name(Symbol s);
  static Concept bottom();
  static Concept interval(Symbol property, Interval range);
  static Concept interval(Symbol property, std::uint64_t lo, std::uint64_t hi) {
    return interval(property, Interval{lo, hi});
  }
  static Concept exists(Symbol role, Concept filler);
  static Concept conj(std::vector<Concept> operands);
  static Concept conj(std::initializer_list<Concept> operands) {
    return conj(std::vector<Concept>(operands));
  }

  ConceptKind kind() const noexcept;
  bool is_bottom() const noexcept { return kind() == ConceptKind::Bottom; }

  /// The name itself, or the role or property an atom is built on.
  Symbol symbol() const noexcept;
  Interval range() const noexcept;
  /// Filler of an existential restriction.
  const Concept& filler() const;
  /// Operands of a conjunction; empty for every other kind.
  std::span<const Concept> operands() const noexcept;
  /// Top-level conjuncts: the operands of a conjunction, otherwise the concept itself.
  std::span<const Concept> conjuncts() const noexcept;

  std::size_t hash() const noexcept;
  /// Number of nodes.
  std::size_t size() const noexcept;
  /// Existential nesting depth; 0 for concepts without existentials.
  std::size_t depth() const noexcept;

  friend bool operator==(const Concept& a, const Concept& b) noexcept;
  friend std::strong_ordering operator<=>(const Concept& a, const Concept& b) noexcept;

 private:
  struct Node;
  explicit Concept(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// A full PL concept: a non-empty union of simple concepts, in input order.
class FullConcept {
 public:
  /// Throws std::invalid_argument on an empty disjunct list.
  explicit FullConcept(std::vector<Concept> disjuncts);
  FullConcept(Concept single) : disjuncts_{std::move(single)} {}  // NOLINT(implicit)

  std::span<const Concept> disjuncts() const noexcept { return disjuncts_; }
  std::size_t size() const noexcept { return disjuncts_.size(); }
  const Concept& operator[](std::size_t i) const { return disjuncts_[i]; }

  std::size_t hash() const noexcept;
  friend bool operator==(const FullConcept&, const FullConcept&) = default;

 private:
  std::vector<Concept> disjuncts_;
};

/// Visits every interval atom in `c`, outermost first, operands in canonical order.
void for_each_interval(const Concept& c, const std::function<void(Symbol, Interval)>& fn);

/// Number of interval atoms occurring anywhere in `c`.
std::size_t interval_count(const Concept& c);

/// Top-level concept names of `c`, sorted and deduplicated.
std::vector<Symbol> top_level_names(const Concept& c);

}  // namespace plr

template <>
struct std::hash<plr::Concept> {
  std::size_t operator()(const plr::Concept& c) const noexcept { return c.hash(); }
};

template <>
struct std::hash<plr::FullConcept> {
  std::size_t operator()(const plr::FullConcept& c) const noexcept { return c.hash(); }
};
