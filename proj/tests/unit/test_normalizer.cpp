#include <gtest/gtest.h>

#include "plr/error.hpp"
#include "plr/normalizer.hpp"
#include "plr/oracle.hpp"
#include "plr/refcheck.hpp"
#include "plr/syntax.hpp"
#include "random_instances.hpp"

namespace plr {
namespace {

FullConcept P(std::string_view text) { return parse_policy(text); }
Concept C(std::string_view text) { return parse_policy(text).disjuncts().front(); }

struct Fixture {
  MainKB k_minus;
  Oracle oracle;

  Fixture(std::string_view kb, std::string_view onto)
      : k_minus(parse_main_kb(kb)), oracle(Oracle::builtin(parse_oracle_ontology(onto))) {}

  NormalizeResult run(std::string_view text) const { return normalize(C(text), k_minus, oracle); }
  FullConcept run_full(std::string_view text, NormalizationStats& stats) const {
    Normalizer n(k_minus);
    QueryPath path(oracle, nullptr);
    return n.normalize_full(P(text), path, stats);
  }
};

TEST(Normalize, RuleFourMergesFunctionalRoleSuccessors) {
  const Fixture f("func R\n", "");
  const auto r = f.run("(and (some R A) (some R B))");
  EXPECT_EQ(r.result, C("(some R (and A B))"));
  EXPECT_EQ(r.stats.rule_applications[4], 1u);
}

TEST(Normalize, RuleFourNeedsFunctionality) {
  const Fixture f("", "");
  EXPECT_EQ(f.run("(and (some R A) (some R B))").result, C("(and (some R A) (some R B))"));
}

TEST(Normalize, RuleFiveIntersectsFunctionalIntervals) {
  const Fixture f("func f\n", "");
  const auto r = f.run("(and (int f 0 10) (int f 5 20))");
  EXPECT_EQ(r.result, C("(int f 5 10)"));
  EXPECT_EQ(r.stats.rule_applications[5], 1u);
}

TEST(Normalize, RuleFiveEmptyIntersectionIsBottom) {
  const Fixture f("func f\n", "");
  EXPECT_TRUE(f.run("(and (int f 0 3) (int f 5 20))").result.is_bottom());
}

TEST(Normalize, RuleThreeEmptyInterval) {
  const Fixture f("", "");
  const auto r = f.run("(int f 7 3)");
  EXPECT_TRUE(r.result.is_bottom());
  EXPECT_EQ(r.stats.rule_applications[3], 1u);
}

TEST(Normalize, RuleSixAddsRange) {
  const Fixture f("range R A\n", "");
  const auto r = f.run("(some R B)");
  EXPECT_EQ(r.result, C("(some R (and B A))"));
  EXPECT_EQ(r.stats.rule_applications[6], 1u);
  // Already present: nothing to do.
  EXPECT_EQ(f.run("(some R (and A B))").stats.total_rule_applications(), 0u);
}

TEST(Normalize, RuleSevenUsesOracleDisjointness) {
  const Fixture f("", "disj A B\n");
  const auto r = f.run("(and A B D)");
  EXPECT_TRUE(r.result.is_bottom());
  EXPECT_EQ(r.stats.rule_applications[7], 1u);
  EXPECT_EQ(r.stats.queries.oracle_calls, 1u);
}

TEST(Normalize, RuleSevenNestedPropagatesThroughRuleTwo) {
  const Fixture f("", "disj A B\n");
  const auto r = f.run("(and C (some R (and A B)))");
  EXPECT_TRUE(r.result.is_bottom());
  EXPECT_GE(r.stats.rule_applications[2], 1u);
}

TEST(Normalize, RulesOneAndTwo) {
  const Fixture f("", "");
  const auto r1 = f.run("(and bot D)");
  EXPECT_TRUE(r1.result.is_bottom());
  EXPECT_EQ(r1.stats.rule_applications[1], 1u);
  const auto r2 = f.run("(some R bot)");
  EXPECT_TRUE(r2.result.is_bottom());
  EXPECT_EQ(r2.stats.rule_applications[2], 1u);
}

TEST(Normalize, RangeAfterMergeFeedsRuleSeven) {
  // The merged filler gains A from range(R, A), and A is disjoint from B.
  const Fixture f("func R\nrange R A\n", "disj A B\n");
  EXPECT_TRUE(f.run("(and (some R C) (some R B))").result.is_bottom());
}

TEST(NormalizeFull, BottomDisjunctsAreRetained) {
  const Fixture f("", "");
  NormalizationStats stats;
  EXPECT_EQ(f.run_full("(or bot A)", stats), P("(or bot A)"));
}

TEST(NormalizeFull, AllBottomCollapses) {
  const Fixture f("", "");
  NormalizationStats stats;
  const auto r = f.run_full("(or (int f 7 3) (int g 9 1))", stats);
  EXPECT_EQ(r, P("bot"));
  EXPECT_EQ(stats.rule_applications[3], 2u);
  EXPECT_EQ(stats.disjuncts_before, 2u);
  EXPECT_EQ(stats.disjuncts_after, 1u);
}

TEST(NormalizeFull, NormalInputIsUntouched) {
  const Fixture f("func R\nrange S A\n", "sub A B\n");
  NormalizationStats stats;
  const auto in = "(or (and A (some R B)) (some S (and A C)))";
  EXPECT_EQ(f.run_full(in, stats), P(in));
  EXPECT_EQ(stats.total_rule_applications(), 0u);
}

TEST(Split, TwoPieces) {
  EXPECT_EQ(split_intervals(P("(int f 0 10)"), P("(int f 5 20)")), P("(or (int f 0 4) (int f 5 10))"));
}

TEST(Split, NoIntervalsUnchanged) {
  const auto lhs = P("(or A (some R B))");
  EXPECT_EQ(split_intervals(lhs, P("(int f 0 1)")), lhs);
}

TEST(Split, ProductOfPieces) {
  const auto out = split_intervals(P("(and (int f 0 10) (int g 0 10))"), P("(and (int f 5 20) (int g 3 6))"));
  EXPECT_EQ(out.size(), 6u);
  EXPECT_TRUE(interval_safe(out, P("(and (int f 5 20) (int g 3 6))")));
}

TEST(Split, PropertiesAreNotMixed) {
  const auto lhs = P("(int f 0 10)");
  EXPECT_EQ(split_intervals(lhs, P("(int g 5 6)")), lhs);
}

TEST(Split, CutsInsideExistentials) {
  const auto out = split_intervals(P("(some R (int f 0 10))"), P("(some S (some T (int f 3 3)))"));
  EXPECT_EQ(out, P("(or (some R (int f 0 2)) (some R (int f 3 3)) (some R (int f 4 10)))"));
}

TEST(Split, BlowupCap) {
  EXPECT_THROW(split_intervals(P("(and (int f 0 10) (int g 0 10))"), P("(and (int f 5 20) (int g 3 6))"),
                               SplitOptions{5}),
               ResourceLimit);
}

// k atoms, each cut into s pieces, give s^k disjuncts.
FullConcept blowup_lhs(std::size_t k) {
  std::vector<Concept> atoms;
  for (std::size_t i = 0; i < k; ++i) {
    atoms.push_back(Concept::interval(Symbol::intern("p" + std::to_string(i)), Interval{0, 99}));
  }
  return FullConcept(Concept::conj(std::move(atoms)));
}

FullConcept blowup_rhs(std::size_t k, std::size_t s) {
  // Adjacent blocks [j·w, (j+1)·w − 1] for j < s − 1 cut [0, 99] into s pieces.
  const std::uint64_t w = 100 / s;
  std::vector<Concept> atoms;
  for (std::size_t i = 0; i < k; ++i) {
    const Symbol p = Symbol::intern("p" + std::to_string(i));
    for (std::uint64_t j = 0; j + 1 < s; ++j) atoms.push_back(Concept::interval(p, Interval{j * w, (j + 1) * w - 1}));
  }
  return FullConcept(Concept::conj(std::move(atoms)));
}

TEST(Split, BlowupLaw) {
  EXPECT_EQ(split_intervals(blowup_lhs(3), blowup_rhs(3, 2)).size(), 8u);
  EXPECT_EQ(split_intervals(blowup_lhs(4), blowup_rhs(4, 3)).size(), 81u);
}

TEST(IntervalSafe, ContainmentOrDisjointness) {
  EXPECT_TRUE(interval_safe(C("(int f 5 10)"), P("(int f 0 20)")));
  EXPECT_TRUE(interval_safe(C("(int f 30 40)"), P("(int f 0 20)")));
  EXPECT_FALSE(interval_safe(C("(int f 15 25)"), P("(int f 0 20)")));
  EXPECT_TRUE(interval_safe(C("(int f 15 25)"), P("(int g 0 20)")));
}

TEST(NormalizeProperty, IdempotentAndFixpoint) {
  test::Gen gen(11);
  for (int i = 0; i < 400; ++i) {
    test::InstanceParams p;
    p.shape.bottom = 0.05;
    const auto inst = gen.instance(p);
    const auto parts = partition(inst.kb);
    const Oracle oracle = Oracle::builtin(inst.oracle).with_shifted(to_horn(parts.shifted));
    Normalizer n(parts.k_minus);
    QueryPath path(oracle, nullptr);
    for (const auto& c : inst.lhs.disjuncts()) {
      NormalizationStats stats;
      const Concept once = n.normalize(c, path, stats);
      NormalizationStats again;
      EXPECT_EQ(n.normalize(once, path, again), once) << serialize_concept(c);
      EXPECT_EQ(again.total_rule_applications(), 0u);
      EXPECT_TRUE(n.is_normalized(once, path)) << serialize_concept(once);
    }
  }
}

TEST(NormalizeProperty, RefAnswersInvariant) {
  test::Gen gen(12);
  for (int i = 0; i < 300; ++i) {
    const auto inst = gen.instance({});
    const auto parts = partition(inst.kb);
    const Oracle base = Oracle::builtin(inst.oracle);
    const Oracle loaded = base.with_shifted(to_horn(parts.shifted));
    Normalizer n(parts.k_minus);
    QueryPath path(loaded, nullptr);
    NormalizationStats stats;
    const FullConcept norm = n.normalize_full(inst.lhs, path, stats);
    EXPECT_EQ(ref_decide(inst.kb, base, inst.lhs, inst.rhs), ref_decide(inst.kb, base, norm, inst.rhs));
    EXPECT_TRUE(ref_decide(inst.kb, base, inst.lhs, norm));
    EXPECT_TRUE(ref_decide(inst.kb, base, norm, inst.lhs));
  }
}

TEST(SplitProperty, OutputIsIntervalSafe) {
  test::Gen gen(13);
  for (int i = 0; i < 500; ++i) {
    const auto inst = gen.instance({});
    const FullConcept out = split_intervals(inst.lhs, inst.rhs);
    EXPECT_TRUE(interval_safe(out, inst.rhs)) << serialize_policy(inst.lhs) << " / " << serialize_policy(inst.rhs);
    EXPECT_GE(out.size(), inst.lhs.size());
  }
}

}  // namespace
}  // namespace plr
