#include "plr/saturation.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "plr/error.hpp"

namespace plr {

SaturationIndex SaturationIndex::build(const OracleOntology& ontology, SaturationOptions options) {
  SaturationIndex idx;
  auto node = [&](Symbol s) -> NodeId {
    auto [it, inserted] = idx.node_of_.try_emplace(s, static_cast<NodeId>(idx.symbols_.size()));
    if (inserted) idx.symbols_.push_back(s);
    return it->second;
  };
  auto role = [&](Symbol s) -> RoleId {
    auto [it, inserted] = idx.role_of_.try_emplace(s, static_cast<RoleId>(idx.roles_.size()));
    if (inserted) idx.roles_.push_back(s);
    return it->second;
  };
  idx.top_ = node(Symbol::top());
  idx.bot_ = node(Symbol::bot());
  for (Symbol s : ontology.concept_names()) node(s);
  for (Symbol r : ontology.signature().roles) role(r);

  const std::size_t n = idx.symbols_.size();
  Rules& rules = idx.rules_;
  rules.told.resize(n);
  rules.conj.resize(n);
  rules.supex.resize(n);
  std::vector<std::vector<RoleId>> told_roles(idx.roles_.size());

  for (const auto& ax : ontology.axioms) {
    switch (ax.kind) {
      case HornAxiom::Kind::Sub:
        rules.told[node(ax.a)].push_back(node(ax.b));
        break;
      case HornAxiom::Kind::Bot:
        rules.told[node(ax.a)].push_back(idx.bot_);
        break;
      case HornAxiom::Kind::SubConj:
      case HornAxiom::Kind::Disj: {
        const NodeId a = node(ax.a);
        const NodeId b = node(ax.b);
        const NodeId c = ax.kind == HornAxiom::Kind::Disj ? idx.bot_ : node(ax.c);
        rules.conj[a].emplace_back(b, c);
        if (a != b) rules.conj[b].emplace_back(a, c);
        break;
      }
      case HornAxiom::Kind::SubEx:
        rules.subex[key(role(ax.a), node(ax.b))].push_back(node(ax.c));
        break;
      case HornAxiom::Kind::SupEx:
        rules.supex[node(ax.a)].emplace_back(role(ax.b), node(ax.c));
        break;
      case HornAxiom::Kind::SubRole:
        told_roles[role(ax.a)].push_back(role(ax.b));
        break;
    }
  }

  rules.super_roles.resize(idx.roles_.size());
  for (RoleId r = 0; r < idx.roles_.size(); ++r) {
    std::vector<bool> seen(idx.roles_.size(), false);
    std::vector<RoleId> stack{r};
    seen[r] = true;
    while (!stack.empty()) {
      const RoleId cur = stack.back();
      stack.pop_back();
      rules.super_roles[r].push_back(cur);
      for (RoleId s : told_roles[cur]) {
        if (!seen[s]) {
          seen[s] = true;
          stack.push_back(s);
        }
      }
    }
  }

  // Saturation state
  std::vector<std::vector<NodeId>> members(n);
  std::unordered_set<std::uint64_t> member_set;
  std::vector<std::vector<std::pair<RoleId, NodeId>>> preds(n);
  std::vector<std::unordered_set<std::uint64_t>> link_set(n);
  std::deque<std::pair<NodeId, NodeId>> fact_queue;
  struct Link {
    NodeId x;
    RoleId r;
    NodeId y;
  };
  std::deque<Link> link_queue;
  std::size_t facts = 0;

  auto charge = [&] {
    if (++facts > options.max_facts) {
      throw ResourceLimit("saturation exceeded " + std::to_string(options.max_facts) + " derived facts");
    }
  };
  auto add_sub = [&](NodeId x, NodeId a) {
    if (member_set.insert(key(x, a)).second) {
      charge();
      members[x].push_back(a);
      fact_queue.emplace_back(x, a);
    }
  };
  auto add_link = [&](NodeId x, RoleId r, NodeId y) {
    for (RoleId s : rules.super_roles[r]) {
      if (link_set[x].insert(key(s, y)).second) {
        charge();
        preds[y].emplace_back(s, x);
        link_queue.push_back({x, s, y});
      }
    }
  };

  for (NodeId x = 0; x < n; ++x) {
    add_sub(x, x);
    add_sub(x, idx.top_);
  }

  std::vector<NodeId> snapshot;
  while (!fact_queue.empty() || !link_queue.empty()) {
    if (!fact_queue.empty()) {
      const auto [x, a] = fact_queue.front();
      fact_queue.pop_front();
      for (NodeId b : rules.told[a]) add_sub(x, b);
      for (const auto& [b, c] : rules.conj[a]) {
        if (member_set.contains(key(x, b))) add_sub(x, c);
      }
      for (const auto& [r, b] : rules.supex[a]) add_link(x, r, b);
      // preds[x] may grow while we iterate when x links to itself
      for (std::size_t i = 0; i < preds[x].size(); ++i) {
        const auto [s, w] = preds[x][i];
        if (a == idx.bot_) add_sub(w, idx.bot_);
        if (const auto* targets = idx.subex_for(s, a)) {
          for (NodeId b : *targets) add_sub(w, b);
        }
      }
      continue;
    }
    const Link link = link_queue.front();
    link_queue.pop_front();
    snapshot = members[link.y];
    for (NodeId a : snapshot) {
      if (a == idx.bot_) add_sub(link.x, idx.bot_);
      if (const auto* targets = idx.subex_for(link.r, a)) {
        for (NodeId b : *targets) add_sub(link.x, b);
      }
    }
  }

  idx.closure_ = std::move(members);
  for (auto& s : idx.closure_) std::sort(s.begin(), s.end());
  idx.links_.resize(n);
  for (NodeId y = 0; y < n; ++y) {
    for (const auto& [r, x] : preds[y]) idx.links_[x].emplace_back(r, y);
  }
  for (auto& l : idx.links_) std::sort(l.begin(), l.end());
  idx.subsumees_.resize(n);
  for (NodeId x = 0; x < n; ++x) {
    if (x == idx.top_ || x == idx.bot_) continue;
    for (NodeId a : idx.closure_[x]) idx.subsumees_[a].push_back(x);
  }
  idx.fact_count_ = facts;
  return idx;
}

const std::vector<SaturationIndex::NodeId>* SaturationIndex::subex_for(RoleId r, NodeId a) const {
  if (rules_.subex.empty()) return nullptr;
  auto it = rules_.subex.find(key(r, a));
  return it == rules_.subex.end() ? nullptr : &it->second;
}

bool SaturationIndex::has(NodeId x, NodeId a) const {
  const auto& s = closure_[x];
  return std::binary_search(s.begin(), s.end(), a);
}

std::vector<SaturationIndex::NodeId> SaturationIndex::overlay_closure(std::span<const Symbol> lhs,
                                                                      std::vector<Symbol>& foreign) const {
  // Membership marks are stamped with a per-call epoch, so the array is
  // reused across queries on this thread without clearing.
  thread_local std::vector<std::uint64_t> marks;
  thread_local std::uint64_t epoch = 0;
  if (marks.size() < symbols_.size()) marks.resize(symbols_.size(), 0);
  const std::uint64_t stamp = ++epoch;
  auto insert = [&](NodeId a) {
    if (marks[a] == stamp) return false;
    marks[a] = stamp;
    return true;
  };
  auto contains = [&](NodeId a) { return marks[a] == stamp; };

  std::vector<NodeId> members;
  std::vector<NodeId> todo;
  auto add = [&](NodeId a) {
    if (insert(a)) {
      members.push_back(a);
      todo.push_back(a);
    }
  };

  // Each S(Ai) is closed on its own; seeding with their union leaves only the
  // binary conjunction rules that combine members from different Ai.
  auto seed = [&](NodeId x) {
    for (NodeId a : closure_[x]) {
      if (insert(a)) members.push_back(a);
    }
  };
  seed(top_);
  for (Symbol s : lhs) {
    if (auto it = node_of_.find(s); it != node_of_.end()) {
      seed(it->second);
    } else {
      foreign.push_back(s);
    }
  }
  const std::size_t seeded = members.size();
  for (std::size_t i = 0; i < seeded; ++i) {
    for (const auto& [b, c] : rules_.conj[members[i]]) {
      if (contains(b)) add(c);
    }
  }

  while (!todo.empty()) {
    const NodeId a = todo.back();
    todo.pop_back();
    for (NodeId b : rules_.told[a]) add(b);
    for (const auto& [b, c] : rules_.conj[a]) {
      if (contains(b)) add(c);
    }
    for (const auto& [r, y] : rules_.supex[a]) {
      for (RoleId s : rules_.super_roles[r]) {
        for (NodeId m : closure_[y]) {
          if (m == bot_) add(bot_);
          if (const auto* targets = subex_for(s, m)) {
            for (NodeId b : *targets) add(b);
          }
        }
      }
    }
  }
  return members;
}

bool SaturationIndex::entails(std::span<const Symbol> lhs, Symbol rhs) const {
  return entails_any(lhs, std::span<const Symbol>(&rhs, 1));
}

bool SaturationIndex::entails_any(std::span<const Symbol> lhs, std::span<const Symbol> rhs) const {
  for (Symbol b : rhs) {
    if (b.is_top()) return true;
  }
  if (lhs.size() <= 1) {
    const Symbol single = lhs.empty() ? Symbol::top() : lhs.front();
    auto it = node_of_.find(single);
    if (it != node_of_.end()) {
      const NodeId x = it->second;
      if (has(x, bot_)) return true;
      for (Symbol b : rhs) {
        auto jt = node_of_.find(b);
        if (jt != node_of_.end() && has(x, jt->second)) return true;
      }
      return false;
    }
  }
  // Entailed by a single conjunct already: the common positive case needs no overlay.
  for (Symbol a : lhs) {
    auto it = node_of_.find(a);
    if (it == node_of_.end()) continue;
    if (has(it->second, bot_)) return true;
    for (Symbol b : rhs) {
      if (b == a) return true;
      auto jt = node_of_.find(b);
      if (jt != node_of_.end() && has(it->second, jt->second)) return true;
    }
  }
  std::vector<Symbol> foreign;
  const auto members = overlay_closure(lhs, foreign);
  if (std::find(members.begin(), members.end(), bot_) != members.end()) return true;
  for (Symbol b : rhs) {
    if (std::find(foreign.begin(), foreign.end(), b) != foreign.end()) return true;
    auto jt = node_of_.find(b);
    if (jt != node_of_.end() && std::find(members.begin(), members.end(), jt->second) != members.end()) {
      return true;
    }
  }
  return false;
}

bool SaturationIndex::unsatisfiable(std::span<const Symbol> lhs) const { return entails(lhs, Symbol::bot()); }

std::vector<Symbol> SaturationIndex::subsumers(Symbol x) const {
  std::vector<Symbol> out;
  auto it = node_of_.find(x);
  if (it == node_of_.end()) {
    out.push_back(x);
    for (NodeId a : closure_[top_]) out.push_back(symbols_[a]);
  } else {
    for (NodeId a : closure_[it->second]) out.push_back(symbols_[a]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Symbol> SaturationIndex::subsumees(Symbol x) const {
  std::vector<Symbol> out;
  auto it = node_of_.find(x);
  if (it == node_of_.end()) return out;
  for (NodeId y : subsumees_[it->second]) out.push_back(symbols_[y]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Symbol, Symbol>> SaturationIndex::successors(Symbol role) const {
  std::vector<std::pair<Symbol, Symbol>> out;
  auto it = role_of_.find(role);
  if (it == role_of_.end()) return out;
  for (NodeId x = 0; x < links_.size(); ++x) {
    for (const auto& [r, y] : links_[x]) {
      if (r == it->second) out.emplace_back(symbols_[x], symbols_[y]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Symbol> SaturationIndex::concept_names() const {
  std::vector<Symbol> out;
  out.reserve(symbols_.size());
  for (NodeId x = 0; x < symbols_.size(); ++x) {
    if (x != top_ && x != bot_) out.push_back(symbols_[x]);
  }
  return out;
}

std::vector<Symbol> SaturationIndex::inconsistent_names() const {
  std::vector<Symbol> out;
  for (NodeId x = 0; x < symbols_.size(); ++x) {
    if (x != bot_ && has(x, bot_)) out.push_back(symbols_[x]);
  }
  return out;
}

}  // namespace plr
