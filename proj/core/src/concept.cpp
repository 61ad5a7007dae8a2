#include "plr/concept.hpp"

#include <algorithm>
#include <stdexcept>

#include "hash_util.hpp"

namespace plr {

struct Concept::Node {
  ConceptKind kind;
  Symbol symbol;
  Interval range;
  std::vector<Concept> children;
  std::size_t hash = 0;
  std::size_t size = 1;
  std::size_t depth = 0;
};

namespace {

std::size_t compute_hash(const ConceptKind kind, Symbol symbol, Interval range,
                         std::span<const Concept> children) {
  std::size_t h = detail::mix(0, static_cast<std::uint64_t>(kind));
  h = detail::mix(h, symbol.id());
  if (kind == ConceptKind::Interval) {
    h = detail::mix(h, range.lo);
    h = detail::mix(h, range.hi);
  }
  for (const auto& c : children) h = detail::mix(h, c.hash());
  return h;
}

}  // namespace

Concept Concept::name(Symbol s) {
  auto node = std::make_shared<Node>();
  node->kind = ConceptKind::Name;
  node->symbol = s;
  node->hash = compute_hash(node->kind, s, {}, {});
  return Concept(std::move(node));
}

Concept Concept::bottom() {
  static const Concept instance = [] {
    auto node = std::make_shared<Node>();
    node->kind = ConceptKind::Bottom;
    node->hash = compute_hash(node->kind, {}, {}, {});
    return Concept(std::move(node));
  }();
  return instance;
}

Concept Concept::interval(Symbol property, Interval range) {
  auto node = std::make_shared<Node>();
  node->kind = ConceptKind::Interval;
  node->symbol = property;
  node->range = range;
  node->hash = compute_hash(node->kind, property, range, {});
  return Concept(std::move(node));
}

Concept Concept::exists(Symbol role, Concept filler) {
  auto node = std::make_shared<Node>();
  node->kind = ConceptKind::Exists;
  node->symbol = role;
  node->size = 1 + filler.size();
  node->depth = 1 + filler.depth();
  node->children.push_back(std::move(filler));
  node->hash = compute_hash(node->kind, role, {}, node->children);
  return Concept(std::move(node));
}

Concept Concept::conj(std::vector<Concept> operands) {
  std::vector<Concept> flat;
  flat.reserve(operands.size());
  for (auto& op : operands) {
    if (op.kind() == ConceptKind::And) {
      for (const auto& inner : op.operands()) flat.push_back(inner);
    } else {
      flat.push_back(std::move(op));
    }
  }
  std::sort(flat.begin(), flat.end());
  flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
  if (flat.empty()) return name(Symbol::top());
  if (flat.size() == 1) return std::move(flat.front());

  auto node = std::make_shared<Node>();
  node->kind = ConceptKind::And;
  for (const auto& c : flat) {
    node->size += c.size();
    node->depth = std::max(node->depth, c.depth());
  }
  node->children = std::move(flat);
  node->hash = compute_hash(node->kind, {}, {}, node->children);
  return Concept(std::move(node));
}

ConceptKind Concept::kind() const noexcept { return node_->kind; }
Symbol Concept::symbol() const noexcept { return node_->symbol; }
Interval Concept::range() const noexcept { return node_->range; }

const Concept& Concept::filler() const {
  if (node_->kind != ConceptKind::Exists) throw std::logic_error("Concept::filler on a non-existential");
  return node_->children.front();
}

std::span<const Concept> Concept::operands() const noexcept {
  if (node_->kind != ConceptKind::And) return {};
  return node_->children;
}

std::span<const Concept> Concept::conjuncts() const noexcept {
  if (node_->kind == ConceptKind::And) return node_->children;
  return {this, 1};
}

std::size_t Concept::hash() const noexcept { return node_->hash; }
std::size_t Concept::size() const noexcept { return node_->size; }
std::size_t Concept::depth() const noexcept { return node_->depth; }

bool operator==(const Concept& a, const Concept& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Concept& a, const Concept& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.symbol <=> y.symbol; c != 0) return c;
  if (x.kind == ConceptKind::Interval) return x.range <=> y.range;
  return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(), y.children.begin(),
                                                y.children.end());
}

FullConcept::FullConcept(std::vector<Concept> disjuncts) : disjuncts_(std::move(disjuncts)) {
  if (disjuncts_.empty()) throw std::invalid_argument("a full concept needs at least one disjunct");
}

std::size_t FullConcept::hash() const noexcept {
  std::size_t h = detail::mix(0, disjuncts_.size());
  for (const auto& d : disjuncts_) h = detail::mix(h, d.hash());
  return h;
}

void for_each_interval(const Concept& c, const std::function<void(Symbol, Interval)>& fn) {
  switch (c.kind()) {
    case ConceptKind::Interval:
      fn(c.symbol(), c.range());
      break;
    case ConceptKind::Exists:
      for_each_interval(c.filler(), fn);
      break;
    case ConceptKind::And:
      for (const auto& op : c.operands()) for_each_interval(op, fn);
      break;
    default:
      break;
  }
}

std::size_t interval_count(const Concept& c) {
  std::size_t n = 0;
  for_each_interval(c, [&](Symbol, Interval) { ++n; });
  return n;
}

std::vector<Symbol> top_level_names(const Concept& c) {
  std::vector<Symbol> names;
  for (const auto& op : c.conjuncts()) {
    if (op.kind() == ConceptKind::Name) names.push_back(op.symbol());
  }
  // operands are sorted, so names already come out ordered and unique
  return names;
}

}  // namespace plr
