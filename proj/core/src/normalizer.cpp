#include "plr/normalizer.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "plr/error.hpp"

namespace plr {

std::uint64_t NormalizationStats::total_rule_applications() const {
  std::uint64_t total = 0;
  for (std::size_t r = 1; r < rule_applications.size(); ++r) total += rule_applications[r];
  return total;
}

NormalizationStats& NormalizationStats::operator+=(const NormalizationStats& o) {
  disjuncts_before += o.disjuncts_before;
  disjuncts_after += o.disjuncts_after;
  queries += o.queries;
  for (std::size_t r = 0; r < rule_applications.size(); ++r) rule_applications[r] += o.rule_applications[r];
  return *this;
}

Normalizer::Normalizer(const MainKB& k_minus) : k_minus_(k_minus) {
  for (const auto& [role, cls] : k_minus_.range) ranges_[role].push_back(cls);
}

// One normalization pass over a concept. Tracks the rewrite budget: every
// rule strictly shrinks a well-founded measure, so exceeding the budget means
// a bug, not a hard input.
class Normalizer::Run {
 public:
  Run(const Normalizer& n, QueryPath& oracle, NormalizationStats& stats, const Concept& root)
      : n_(n), oracle_(oracle), stats_(stats) {
    budget_ = 8 * root.size() * (n_.k_minus_.range.size() + 1) + 64;
  }

  Concept norm(const Concept& c) {
    switch (c.kind()) {
      case ConceptKind::Bottom:
        return c;
      case ConceptKind::Name:
        if (unsatisfiable({c.symbol()})) {
          apply(7);
          return Concept::bottom();
        }
        return c;
      case ConceptKind::Interval:
        if (c.range().empty()) {
          apply(3);
          return Concept::bottom();
        }
        return c;
      case ConceptKind::Exists:
        return norm_exists(c.symbol(), norm(c.filler()));
      case ConceptKind::And: {
        std::vector<Concept> ops;
        ops.reserve(c.operands().size());
        // bare names are left to the single rule 7 query of the conjunction
        for (const auto& op : c.operands()) ops.push_back(op.kind() == ConceptKind::Name ? op : norm(op));
        return norm_conj(std::move(ops), false);
      }
    }
    return c;
  }

 private:
  void apply(int rule) {
    ++stats_.rule_applications[rule];
    if (++applied_ > budget_) {
      throw std::logic_error("normalization exceeded its rewrite budget; the rule system failed to terminate");
    }
  }

  bool unsatisfiable(std::vector<Symbol> names) { return oracle_.ask(OracleQuery::unsatisfiable(std::move(names))); }

  // `filler` is normalized.
  Concept norm_exists(Symbol role, Concept filler) {
    if (filler.is_bottom()) {
      apply(2);
      return Concept::bottom();
    }
    auto it = n_.ranges_.find(role);
    if (it == n_.ranges_.end()) return Concept::exists(role, std::move(filler));

    std::vector<Concept> ops(filler.conjuncts().begin(), filler.conjuncts().end());
    bool added = false;
    for (Symbol cls : it->second) {
      const Concept name = Concept::name(cls);
      if (std::find(ops.begin(), ops.end(), name) != ops.end()) continue;
      apply(6);
      ops.push_back(name);
      added = true;
    }
    if (!added) return Concept::exists(role, std::move(filler));
    // the new names may make the filler inconsistent, or be inconsistent themselves
    Concept extended = Concept::conj(std::move(ops));
    if (unsatisfiable(top_level_names(extended))) {
      apply(7);
      apply(2);
      return Concept::bottom();
    }
    return Concept::exists(role, std::move(extended));
  }

  // Every operand is normalized, except that bare names are unchecked unless
  // `names_checked`.
  Concept norm_conj(std::vector<Concept> ops, bool names_checked) {
    std::vector<Symbol> names;
    std::map<Symbol, std::vector<Interval>> intervals;
    std::map<Symbol, std::vector<Concept>> exists;
    for (const auto& op : ops) {
      for (const auto& c : op.conjuncts()) {
        switch (c.kind()) {
          case ConceptKind::Bottom:
            apply(1);
            return Concept::bottom();
          case ConceptKind::Name:
            names.push_back(c.symbol());
            break;
          case ConceptKind::Interval:
            intervals[c.symbol()].push_back(c.range());
            break;
          case ConceptKind::Exists:
            exists[c.symbol()].push_back(c.filler());
            break;
          case ConceptKind::And:
            throw std::logic_error("conjunction nested in conjunction");
        }
      }
    }

    std::vector<Concept> out;
    out.reserve(ops.size());

    for (auto& [prop, ranges] : intervals) {
      std::sort(ranges.begin(), ranges.end());
      ranges.erase(std::unique(ranges.begin(), ranges.end()), ranges.end());
      if (ranges.size() > 1 && n_.k_minus_.is_functional(prop)) {
        Interval merged = ranges.front();
        for (std::size_t i = 1; i < ranges.size(); ++i) {
          apply(5);
          merged.lo = std::max(merged.lo, ranges[i].lo);
          merged.hi = std::min(merged.hi, ranges[i].hi);
        }
        if (merged.empty()) {
          apply(3);
          apply(1);
          return Concept::bottom();
        }
        out.push_back(Concept::interval(prop, merged));
      } else {
        for (const auto& r : ranges) out.push_back(Concept::interval(prop, r));
      }
    }

    for (auto& [role, fillers] : exists) {
      std::sort(fillers.begin(), fillers.end());
      fillers.erase(std::unique(fillers.begin(), fillers.end()), fillers.end());
      if (fillers.size() > 1 && n_.k_minus_.is_functional(role)) {
        for (std::size_t i = 1; i < fillers.size(); ++i) apply(4);
        // every filler is normalized and carries the range names already, so
        // only the combination needs rewriting
        Concept merged = norm_conj(std::move(fillers), true);
        if (merged.is_bottom()) {
          apply(2);
          apply(1);
          return Concept::bottom();
        }
        out.push_back(Concept::exists(role, std::move(merged)));
      } else {
        for (auto& f : fillers) out.push_back(Concept::exists(role, std::move(f)));
      }
    }

    if (!names.empty()) {
      std::sort(names.begin(), names.end());
      names.erase(std::unique(names.begin(), names.end()), names.end());
      if ((names.size() > 1 || !names_checked) && unsatisfiable(names)) {
        apply(7);
        return Concept::bottom();
      }
      for (Symbol s : names) out.push_back(Concept::name(s));
    }
    return Concept::conj(std::move(out));
  }

  const Normalizer& n_;
  QueryPath& oracle_;
  NormalizationStats& stats_;
  std::size_t budget_ = 0;
  std::size_t applied_ = 0;
};

Concept Normalizer::normalize(const Concept& c, QueryPath& oracle, NormalizationStats& stats) const {
  const QueryCounters before = oracle.counters();
  Concept result = Run(*this, oracle, stats, c).norm(c);
  stats.queries.oracle_calls += oracle.counters().oracle_calls - before.oracle_calls;
  stats.queries.cache_hits += oracle.counters().cache_hits - before.cache_hits;
  return result;
}

FullConcept Normalizer::normalize_full(const FullConcept& c, QueryPath& oracle, NormalizationStats& stats) const {
  std::vector<Concept> out;
  out.reserve(c.size());
  bool all_bottom = true;
  for (const auto& d : c.disjuncts()) {
    out.push_back(normalize(d, oracle, stats));
    all_bottom = all_bottom && out.back().is_bottom();
  }
  if (all_bottom) out.assign(1, Concept::bottom());
  stats.disjuncts_before += c.size();
  stats.disjuncts_after += out.size();
  return FullConcept(std::move(out));
}

bool Normalizer::is_normalized(const Concept& c, QueryPath& oracle) const {
  auto names_ok = [&](const Concept& conj) {
    auto names = top_level_names(conj);
    return names.empty() || !oracle.ask(OracleQuery::unsatisfiable(std::move(names)));
  };
  switch (c.kind()) {
    case ConceptKind::Bottom:
      return true;
    case ConceptKind::Name:
      return names_ok(c);
    case ConceptKind::Interval:
      return !c.range().empty();
    case ConceptKind::Exists:
    case ConceptKind::And:
      break;
  }
  std::map<Symbol, int> interval_count;
  std::map<Symbol, int> exists_count;
  for (const auto& op : c.conjuncts()) {
    switch (op.kind()) {
      case ConceptKind::Bottom:
        return false;
      case ConceptKind::Name:
        break;
      case ConceptKind::Interval:
        if (op.range().empty()) return false;
        if (++interval_count[op.symbol()] > 1 && k_minus_.is_functional(op.symbol())) return false;
        break;
      case ConceptKind::Exists: {
        if (++exists_count[op.symbol()] > 1 && k_minus_.is_functional(op.symbol())) return false;
        const Concept& filler = op.filler();
        if (filler.is_bottom()) return false;
        if (auto it = ranges_.find(op.symbol()); it != ranges_.end()) {
          for (Symbol cls : it->second) {
            const auto conjuncts = filler.conjuncts();
            if (std::find(conjuncts.begin(), conjuncts.end(), Concept::name(cls)) == conjuncts.end()) return false;
          }
        }
        if (!is_normalized(filler, oracle)) return false;
        break;
      }
      case ConceptKind::And:
        return false;
    }
  }
  return names_ok(c);
}

NormalizeResult normalize(const Concept& c, const MainKB& k_minus, const Oracle& oracle, QueryCache* cache) {
  QueryPath path(oracle, cache);
  NormalizationStats stats;
  Concept result = Normalizer(k_minus).normalize(c, path, stats);
  return {std::move(result), stats};
}

namespace {

using CutPoints = std::unordered_map<Symbol, std::vector<std::uint64_t>>;

CutPoints collect_cut_points(const FullConcept& rhs) {
  CutPoints cuts;
  for (const auto& d : rhs.disjuncts()) {
    for_each_interval(d, [&](Symbol f, Interval r) {
      if (r.empty()) return;
      auto& points = cuts[f];
      points.push_back(r.lo);
      if (r.hi != UINT64_MAX) points.push_back(r.hi + 1);
    });
  }
  for (auto& [f, points] : cuts) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
  }
  return cuts;
}

std::vector<Interval> pieces_of(Interval r, const std::vector<std::uint64_t>* points) {
  if (points == nullptr || r.empty()) return {r};
  std::vector<Interval> pieces;
  std::uint64_t lo = r.lo;
  for (auto it = std::upper_bound(points->begin(), points->end(), r.lo); it != points->end() && *it <= r.hi; ++it) {
    pieces.push_back({lo, *it - 1});
    lo = *it;
  }
  pieces.push_back({lo, r.hi});
  return pieces;
}

Concept rebuild(const Concept& c, const std::vector<Interval>& chosen, std::size_t& next) {
  switch (c.kind()) {
    case ConceptKind::Interval:
      return Concept::interval(c.symbol(), chosen[next++]);
    case ConceptKind::Exists:
      return Concept::exists(c.symbol(), rebuild(c.filler(), chosen, next));
    case ConceptKind::And: {
      std::vector<Concept> ops;
      ops.reserve(c.operands().size());
      for (const auto& op : c.operands()) ops.push_back(rebuild(op, chosen, next));
      return Concept::conj(std::move(ops));
    }
    default:
      return c;
  }
}

}  // namespace

FullConcept split_intervals(const FullConcept& lhs, const FullConcept& rhs, SplitOptions options) {
  const CutPoints cuts = collect_cut_points(rhs);
  std::vector<Concept> out;
  for (const auto& d : lhs.disjuncts()) {
    std::vector<std::vector<Interval>> pieces;
    std::size_t combos = 1;
    for_each_interval(d, [&](Symbol f, Interval r) {
      auto it = cuts.find(f);
      pieces.push_back(pieces_of(r, it == cuts.end() ? nullptr : &it->second));
      const std::size_t k = pieces.back().size();
      if (combos > options.max_disjuncts / k) combos = options.max_disjuncts + 1;
      else combos *= k;
    });
    if (combos == 1) {
      out.push_back(d);
      continue;
    }
    if (combos > options.max_disjuncts || out.size() + combos > options.max_disjuncts) {
      throw ResourceLimit("interval splitting exceeds " + std::to_string(options.max_disjuncts) + " disjuncts");
    }
    std::vector<std::size_t> odometer(pieces.size(), 0);
    std::vector<Interval> chosen(pieces.size());
    for (;;) {
      for (std::size_t i = 0; i < pieces.size(); ++i) chosen[i] = pieces[i][odometer[i]];
      std::size_t next = 0;
      out.push_back(rebuild(d, chosen, next));
      bool done = true;
      for (std::size_t i = pieces.size(); i-- > 0;) {
        if (++odometer[i] < pieces[i].size()) {
          done = false;
          break;
        }
        odometer[i] = 0;
      }
      if (done) break;
    }
  }
  if (out.size() > options.max_disjuncts) {
    throw ResourceLimit("interval splitting exceeds " + std::to_string(options.max_disjuncts) + " disjuncts");
  }
  return FullConcept(std::move(out));
}

bool interval_safe(const Concept& lhs, const FullConcept& rhs) {
  std::unordered_map<Symbol, std::vector<Interval>> targets;
  for (const auto& d : rhs.disjuncts()) {
    for_each_interval(d, [&](Symbol f, Interval r) { targets[f].push_back(r); });
  }
  bool safe = true;
  for_each_interval(lhs, [&](Symbol f, Interval r) {
    auto it = targets.find(f);
    if (it == targets.end()) return;
    for (const auto& t : it->second) {
      if (!t.contains(r) && r.intersects(t)) safe = false;
    }
  });
  return safe;
}

bool interval_safe(const FullConcept& lhs, const FullConcept& rhs) {
  return std::all_of(lhs.disjuncts().begin(), lhs.disjuncts().end(),
                     [&](const Concept& c) { return interval_safe(c, rhs); });
}

}  // namespace plr
