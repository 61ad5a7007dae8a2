#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "plr/benchgen.hpp"
#include "plr/engine.hpp"
#include "plr/error.hpp"
#include "plr/refcheck.hpp"
#include "plr/syntax.hpp"

namespace plr {
namespace {

Symbol S(const char* s) { return Symbol::intern(s); }

struct World {
  GeneratedKB kb;
  OracleOntology onto;
  Oracle oracle;
  Vocabulary vocab;

  World(const char* kb_preset, std::size_t classes, std::uint64_t seed)
      : kb(make_kb(kb_preset, classes, seed)), onto(make_onto(classes, seed)), oracle(Oracle::builtin(onto)) {
    vocab.classes = onto.concept_names();
    vocab.roles = kb.roles;
    vocab.properties = kb.properties;
  }

  static OracleOntology make_onto(std::size_t classes, std::uint64_t seed) {
    SyntheticOracleParams p;
    p.classes = classes;
    p.height = 5;
    p.disjoint_pairs = classes / 10;
    Rng rng(seed);
    return gen_synthetic_oracle(p, rng);
  }
  static GeneratedKB make_kb(const char* preset, std::size_t classes, std::uint64_t seed) {
    Rng rng(seed + 1);
    return gen_main_kb(KBParams::preset(preset), make_onto(classes, seed).concept_names(), rng);
  }
};

TEST(Rng, DeterministicAndBounded) {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  Rng r(9);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.uniform(3, 7);
    EXPECT_GE(v, 3u);
    EXPECT_LE(v, 7u);
  }
  EXPECT_EQ(r.uniform(4, 4), 4u);
  EXPECT_NE(Rng::derive(1, {2}), Rng::derive(1, {3}));
  EXPECT_NE(Rng::derive(1, {2, 0}), Rng::derive(1, {2}));
}

TEST(Rng, UniformCoversRange) {
  Rng r(1);
  std::array<int, 6> hits{};
  for (int i = 0; i < 6000; ++i) ++hits[r.index(6)];
  for (int h : hits) EXPECT_GT(h, 800);
}

TEST(KBPresets, TableValues) {
  const auto k1 = KBParams::preset("K1");
  EXPECT_EQ(k1.roles, 10u);
  EXPECT_EQ(k1.properties, 5u);
  EXPECT_EQ(k1.func_avg, 5u);
  EXPECT_EQ(k1.range_axioms, 5u);
  const auto k3 = KBParams::preset("K3");
  EXPECT_EQ(k3.roles, 50u);
  EXPECT_EQ(k3.properties, 15u);
  EXPECT_EQ(k3.range_axioms, 25u);
  EXPECT_THROW(KBParams::preset("K9"), std::invalid_argument);
}

TEST(KBGen, CountsFollowParameters) {
  Rng rng(3);
  const auto gk = gen_main_kb(KBParams::preset("K2"), {S("X"), S("Y")}, rng);
  EXPECT_EQ(gk.roles.size(), 30u);
  EXPECT_EQ(gk.properties.size(), 10u);
  EXPECT_EQ(gk.kb.range.size(), 15u);
  EXPECT_GE(gk.kb.func.size(), 3u);
  EXPECT_LE(gk.kb.func.size(), 27u);
  EXPECT_TRUE(gk.kb.inclusions.empty());
}

TEST(KBGen, ZeroParamsGiveEmptyKB) {
  Rng rng(3);
  const auto gk = gen_main_kb(KBParams{}, {}, rng);
  EXPECT_TRUE(gk.kb.func.empty());
  EXPECT_TRUE(gk.kb.range.empty());
  EXPECT_TRUE(gk.roles.empty());
}

TEST(PolicyPresets, TableValues) {
  const auto p1 = PolicyParams::preset("P1");
  EXPECT_EQ(p1.simple_per_full, 10u);
  EXPECT_EQ(p1.max_depth, 4u);
  EXPECT_EQ(p1.max_intervals, 8u);
  EXPECT_EQ(p1.max_interval_length, 50u);
  EXPECT_EQ(PolicyParams::preset("P3").max_interval_length, 150u);
  EXPECT_THROW(PolicyParams::preset("P0"), std::invalid_argument);
}

TEST(SyntheticOracle, LayeredAndConsistentSize) {
  SyntheticOracleParams p;
  p.classes = 200;
  p.height = 4;
  p.disjoint_pairs = 20;
  Rng rng(4);
  const auto onto = gen_synthetic_oracle(p, rng);
  // Root-layer classes without children or disjointness may not occur at all.
  const auto names = onto.concept_names();
  EXPECT_LE(names.size(), 200u);
  EXPECT_GE(names.size(), 150u);
  const auto idx = SaturationIndex::build(onto);
  // The root layer has no parent, so C0 is never below anything but Top.
  const auto sups = idx.subsumers(S("C0"));
  EXPECT_LE(sups.size(), 2u);
}

TEST(PolicyGen, ShapeRespectsParameters) {
  const World w("K1", 300, 7);
  PolicyParams pp = PolicyParams::preset("P1");
  const PolicyGenerator gen(w.kb.kb, w.oracle, w.vocab, pp);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto b = gen.business(seed);
    EXPECT_EQ(b.policy.size(), 10u);
    EXPECT_LE(b.ni, 8u);
    for (const auto& d : b.policy.disjuncts()) {
      EXPECT_LE(d.depth(), 5u);
      for_each_interval(d, [&](Symbol, const Interval& r) { EXPECT_LE(r.hi - r.lo + 1, 50u); });
    }
  }
}

TEST(PolicyGen, DisjunctsAreConsistent) {
  const World w("K2", 300, 8);
  const PolicyGenerator gen(w.kb.kb, w.oracle, w.vocab, PolicyParams::preset("P2"));
  const Engine e = Engine::build(w.kb.kb, w.oracle);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto b = gen.business(seed);
    for (const auto& d : b.policy.disjuncts()) {
      EXPECT_FALSE(e.check(FullConcept(d), FullConcept(Concept::bottom())).answer) << serialize_concept(d);
    }
  }
}

TEST(PolicyGen, Deterministic) {
  const World w("K1", 200, 9);
  const PolicyGenerator gen(w.kb.kb, w.oracle, w.vocab, PolicyParams::preset("P1"));
  EXPECT_EQ(gen.business(42).policy, gen.business(42).policy);
  EXPECT_EQ(gen.consent(42, {}).policy, gen.consent(42, {}).policy);
  EXPECT_NE(gen.business(42).policy, gen.business(43).policy);
}

TEST(PolicyGen, TargetIntervalsAreHitExactly) {
  const World w("K1", 200, 10);
  for (std::size_t t = 0; t <= 4; ++t) {
    PolicyParams pp = PolicyParams::preset("P1");
    pp.target_intervals = t;
    const PolicyGenerator gen(w.kb.kb, w.oracle, w.vocab, pp);
    const auto b = gen.business(5);
    EXPECT_EQ(b.ni, t);
  }
}

TEST(PolicyGen, NameChoicesIndependentOfIntervalTarget) {
  const World w("K1", 200, 11);
  auto names_of = [&](std::size_t t) {
    PolicyParams pp = PolicyParams::preset("P1");
    pp.target_intervals = t;
    const auto text = serialize_policy(PolicyGenerator(w.kb.kb, w.oracle, w.vocab, pp).business(3).policy);
    const std::regex token(R"(\b(C|role)\d+\b)");
    std::vector<std::string> names;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), token); it != std::sregex_iterator(); ++it) {
      names.push_back(it->str());
    }
    std::sort(names.begin(), names.end());
    return names;
  };
  EXPECT_EQ(names_of(0), names_of(3));
}

TEST(PolicyGen, SingleNameVocabulary) {
  Vocabulary v;
  v.classes = {S("A")};
  PolicyParams pp;
  pp.simple_per_full = 1;
  pp.max_width = 1;
  pp.max_depth = 0;
  pp.max_classes = 1;
  pp.exists_per_level = 1;
  pp.max_intervals = 1;
  pp.target_intervals = 0;
  const PolicyGenerator gen({}, Oracle::builtin({}), v, pp);
  EXPECT_EQ(gen.business(1).policy, FullConcept(Concept::name(S("A"))));
}

TEST(PolicyGen, InconsistentDrawsAreDiscarded) {
  Vocabulary v;
  v.classes = {S("A"), S("B")};
  PolicyParams pp;
  pp.simple_per_full = 20;
  pp.max_width = 2;
  pp.max_depth = 0;
  pp.max_classes = 2;
  pp.target_intervals = 0;
  const Oracle disj = Oracle::builtin(parse_oracle_ontology("disj A B\n"));
  const PolicyGenerator gen({}, disj, v, pp);
  const Engine e = Engine::build({}, disj);
  const auto b = gen.business(2);
  EXPECT_GT(b.discarded, 0u);
  for (const auto& d : b.policy.disjuncts()) {
    EXPECT_FALSE(e.check(FullConcept(d), FullConcept(Concept::bottom())).answer);
  }
  EXPECT_EQ(PolicyGenerator({}, Oracle::builtin({}), v, pp).business(2).discarded, 0u);
}

TEST(PolicyGen, RetryCapRaises) {
  Vocabulary v;
  v.classes = {S("A")};
  PolicyParams pp;
  pp.max_depth = 0;
  pp.target_intervals = 0;
  pp.max_retries = 5;
  const PolicyGenerator gen({}, Oracle::builtin(parse_oracle_ontology("bot A\n")), v, pp);
  EXPECT_THROW(gen.business(0), GenerationFailure);
}

TEST(Consent, NoMutationIsIdentity) {
  const World w("K1", 200, 12);
  const PolicyGenerator gen(w.kb.kb, w.oracle, w.vocab, PolicyParams::preset("P1"));
  const auto c = gen.consent(8, MutationParams::none());
  EXPECT_EQ(c.policy, gen.business(8).policy);
  EXPECT_TRUE(c.log.empty());
}

TEST(Consent, GeneralizingMutationsKeepCompliance) {
  const World w("K1", 200, 13);
  PolicyParams pp = PolicyParams::preset("P1");
  pp.simple_per_full = 3;
  pp.max_intervals = 2;
  const PolicyGenerator gen(w.kb.kb, w.oracle, w.vocab, pp);
  const Engine e = Engine::build(w.kb.kb, w.oracle);
  std::size_t mutated = 0;
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto b = gen.business(seed);
    const auto c = gen.consent(seed, MutationParams::generalizing_only());
    mutated += c.log.size();
    EXPECT_TRUE(ref_decide(w.kb.kb, w.oracle, b.policy, c.policy)) << seed;
    EXPECT_TRUE(e.check(b.policy, c.policy).answer) << seed;
  }
  EXPECT_GT(mutated, 0u);
}

TEST(Consent, DisjointSiblingBreaksCompliance) {
  Vocabulary v;
  v.classes = {S("Alpha")};
  v.roles = {S("r0")};
  PolicyParams pp;
  pp.simple_per_full = 3;
  pp.max_depth = 2;
  pp.target_intervals = 0;
  const Oracle o = Oracle::builtin(parse_oracle_ontology("disj Alpha Beta\n"));
  const PolicyGenerator gen({}, o, v, pp);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FullConcept business = gen.business(seed).policy;
    const FullConcept consent =
        parse_policy(std::regex_replace(serialize_policy(business), std::regex(R"(\bAlpha\b)"), "Beta"));
    EXPECT_FALSE(ref_decide({}, o, business, consent));
    EXPECT_FALSE(Engine::build({}, o).check(business, consent).answer);
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("plr_bg_" + std::to_string(::getpid()) + "_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

SuiteParams small_suite(std::size_t count) {
  SuiteParams sp;
  sp.kb = KBParams::preset("K1");
  sp.policy = PolicyParams::preset("P1");
  sp.policy.simple_per_full = 3;
  sp.policy.max_intervals = 2;
  sp.seed = 7;
  sp.count = count;
  return sp;
}

TEST(Suite, CountZeroWritesOnlyTheManifestSkeleton) {
  const auto dir = fresh_dir("empty");
  const auto entries = gen_suite(small_suite(0), World::make_onto(50, 1), dir);
  EXPECT_TRUE(entries.empty());
  EXPECT_TRUE(parse_manifest(slurp(dir / "manifest.txt")).empty());
  std::filesystem::remove_all(dir);
}

TEST(Suite, SameSeedIsByteIdentical) {
  const auto a = fresh_dir("a");
  const auto b = fresh_dir("b");
  const auto onto = World::make_onto(100, 2);
  gen_suite(small_suite(4), onto, a);
  gen_suite(small_suite(4), onto, b);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    const auto rel = std::filesystem::relative(entry.path(), a);
    EXPECT_EQ(slurp(entry.path()), slurp(b / rel)) << rel;
    ++files;
  }
  EXPECT_EQ(files, 3u + 2 * 4);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(Suite, ExpectedAnswersMatchTheEngine) {
  const auto dir = fresh_dir("expected");
  auto sp = small_suite(5);
  sp.ni_targets = {0, 2};
  const auto entries = gen_suite(sp, World::make_onto(100, 3), dir);
  ASSERT_EQ(entries.size(), 10u);
  const MainKB kb = parse_main_kb(slurp(dir / "kb.plkb"));
  const Engine e = Engine::build(kb, Oracle::builtin(parse_oracle_ontology(slurp(dir / "oracle.horn"))));
  for (const auto& m : entries) {
    ASSERT_TRUE(m.expected.has_value());
    const auto lhs = parse_policy(slurp(dir / m.lhs));
    const auto rhs = parse_policy(slurp(dir / m.rhs));
    EXPECT_EQ(e.check(lhs, rhs).answer, *m.expected) << m.lhs;
  }
  std::filesystem::remove_all(dir);
}

TEST(Manifest, RoundTripAndErrors) {
  std::vector<ManifestEntry> in{{"queries/a.plp", "queries/b.plp", "kb.plkb", "oracle.horn", 3, 2, true},
                                {"x.plp", "y.plp", "kb.plkb", "oracle.horn", 4, 0, std::nullopt}};
  const auto out = parse_manifest(serialize_manifest(in));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].lhs, "queries/a.plp");
  EXPECT_EQ(out[0].expected, std::optional<bool>(true));
  EXPECT_EQ(out[1].seed, 4u);
  EXPECT_FALSE(out[1].expected.has_value());
  EXPECT_THROW(parse_manifest("lhs=a rhs=b kb=c oracle=d seed=x ni=0 expected=true\n"), ParseError);
  EXPECT_THROW(parse_manifest("lhs=a\n"), ParseError);
}

}  // namespace
}  // namespace plr
