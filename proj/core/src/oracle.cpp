#include "plr/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "hash_util.hpp"
#include "plr/error.hpp"

namespace plr {

OracleQuery::OracleQuery(std::vector<Symbol> lhs, std::vector<Symbol> rhs)
    : lhs_(std::move(lhs)), rhs_(std::move(rhs)) {
  if (rhs_.empty()) throw std::invalid_argument("oracle query needs a non-empty right-hand side");
  std::sort(lhs_.begin(), lhs_.end());
  lhs_.erase(std::unique(lhs_.begin(), lhs_.end()), lhs_.end());
  std::sort(rhs_.begin(), rhs_.end());
  rhs_.erase(std::unique(rhs_.begin(), rhs_.end()), rhs_.end());
  std::size_t h = detail::mix(0, lhs_.size());
  for (Symbol s : lhs_) h = detail::mix(h, s.id());
  h = detail::mix(h, 0xffffffffull);
  for (Symbol s : rhs_) h = detail::mix(h, s.id());
  hash_ = h;
}

std::string to_wire(const OracleQuery& q) {
  std::string line = "Q";
  if (q.lhs().empty()) {
    line += " Top";
  } else {
    for (Symbol s : q.lhs()) {
      line += ' ';
      line += s.str();
    }
  }
  line += " :";
  for (Symbol s : q.rhs()) {
    line += ' ';
    line += s.str();
  }
  return line;
}

namespace {

class BuiltinBackend final : public OracleBackend {
 public:
  BuiltinBackend(OracleOntology ontology, SaturationOptions options)
      : ontology_(std::move(ontology)),
        options_(options),
        index_(SaturationIndex::build(ontology_, options_)),
        signature_(ontology_.signature()) {}

  bool entails(const OracleQuery& q) const override { return index_.entails_any(q.lhs(), q.rhs()); }
  Signature signature() const override { return signature_; }

  std::shared_ptr<const OracleBackend> with_axioms(std::span<const HornAxiom> axioms) const override {
    OracleOntology extended = ontology_;
    extended.axioms.insert(extended.axioms.end(), axioms.begin(), axioms.end());
    return std::make_shared<BuiltinBackend>(std::move(extended), options_);
  }

  std::string_view name() const override { return "builtin"; }
  const SaturationIndex* index() const override { return &index_; }

 private:
  OracleOntology ontology_;
  SaturationOptions options_;
  SaturationIndex index_;
  Signature signature_;
};

class BruteForceBackend final : public OracleBackend {
 public:
  explicit BruteForceBackend(OracleOntology ontology) : ontology_(std::move(ontology)) {
    if (!ontology_.role_free()) throw UnsupportedInput("brute-force oracle accepts role-free ontologies only");
  }

  bool entails(const OracleQuery& q) const override { return brute_force_query(ontology_.axioms, q); }
  Signature signature() const override { return ontology_.signature(); }

  std::shared_ptr<const OracleBackend> with_axioms(std::span<const HornAxiom> axioms) const override {
    OracleOntology extended = ontology_;
    extended.axioms.insert(extended.axioms.end(), axioms.begin(), axioms.end());
    return std::make_shared<BruteForceBackend>(std::move(extended));
  }

  std::string_view name() const override { return "brute-force"; }

 private:
  OracleOntology ontology_;
};

}  // namespace

Oracle::Oracle(std::shared_ptr<const OracleBackend> backend)
    : backend_(std::move(backend)), calls_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}

Oracle Oracle::builtin(OracleOntology ontology, SaturationOptions options) {
  return Oracle(std::make_shared<BuiltinBackend>(std::move(ontology), options));
}

Oracle Oracle::brute_force(OracleOntology ontology) {
  return Oracle(std::make_shared<BruteForceBackend>(std::move(ontology)));
}

bool Oracle::query(const OracleQuery& q) const {
  calls_->fetch_add(1, std::memory_order_relaxed);
  return backend_->entails(q);
}

Oracle Oracle::with_shifted(std::span<const HornAxiom> shifted) const {
  if (shifted.empty()) return Oracle(backend_);
  return Oracle(backend_->with_axioms(shifted));
}

bool brute_force_query(std::span<const HornAxiom> axioms, const OracleQuery& q) {
  std::unordered_map<Symbol, unsigned> var;
  auto index_of = [&](Symbol s) {
    if (s.is_top() || s.is_bot()) return;
    var.try_emplace(s, static_cast<unsigned>(var.size()));
  };
  for (const auto& ax : axioms) {
    if (ax.mentions_roles()) throw UnsupportedInput("brute-force oracle cannot decide role axioms: " + to_line(ax));
    index_of(ax.a);
    if (ax.b.valid()) index_of(ax.b);
    if (ax.c.valid()) index_of(ax.c);
  }
  for (Symbol s : q.lhs()) index_of(s);
  for (Symbol s : q.rhs()) index_of(s);
  if (var.size() > 20) throw UnsupportedInput("brute-force oracle is limited to 20 names");

  auto value = [&](Symbol s, std::uint32_t mask) {
    if (s.is_top()) return true;
    if (s.is_bot()) return false;
    return ((mask >> var.at(s)) & 1u) != 0;
  };
  auto satisfies = [&](const HornAxiom& ax, std::uint32_t m) {
    switch (ax.kind) {
      case HornAxiom::Kind::Sub:
        return !value(ax.a, m) || value(ax.b, m);
      case HornAxiom::Kind::SubConj:
        return !(value(ax.a, m) && value(ax.b, m)) || value(ax.c, m);
      case HornAxiom::Kind::Disj:
        return !(value(ax.a, m) && value(ax.b, m));
      case HornAxiom::Kind::Bot:
        return !value(ax.a, m);
      default:
        return true;
    }
  };

  const std::uint32_t limit = 1u << var.size();
  for (std::uint32_t m = 0; m < limit; ++m) {
    if (!std::all_of(q.lhs().begin(), q.lhs().end(), [&](Symbol s) { return value(s, m); })) continue;
    if (!std::all_of(axioms.begin(), axioms.end(), [&](const HornAxiom& ax) { return satisfies(ax, m); })) continue;
    if (std::none_of(q.rhs().begin(), q.rhs().end(), [&](Symbol s) { return value(s, m); })) return false;
  }
  return true;
}

}  // namespace plr
