#include <gtest/gtest.h>

#include "plr/concept.hpp"
#include "plr/knowledge_base.hpp"
#include "plr/syntax.hpp"
#include "random_instances.hpp"

namespace plr {
namespace {

Symbol S(const char* s) { return Symbol::intern(s); }
Concept N(const char* s) { return Concept::name(S(s)); }

TEST(Symbol, InterningIsStable) {
  EXPECT_EQ(S("has_data"), S("has_data"));
  EXPECT_NE(S("has_data"), S("has_purpose"));
  EXPECT_EQ(S("has_data").str(), "has_data");
  EXPECT_TRUE(S("Top").is_top());
  EXPECT_TRUE(S("Bot").is_bot());
  EXPECT_FALSE(Symbol::lookup("never_interned_name_xyz").valid());
}

TEST(Concept, ConjunctionIsFlattenedSortedAndDeduplicated) {
  const Concept x = Concept::conj({N("A"), Concept::conj({N("B"), N("A")})});
  const Concept y = Concept::conj({N("B"), N("A")});
  EXPECT_EQ(x, y);
  EXPECT_EQ(x.operands().size(), 2u);
  EXPECT_EQ(Concept::conj({N("X"), N("X")}), N("X"));
  EXPECT_EQ(Concept::conj(std::vector<Concept>{}), Concept::name(Symbol::top()));
}

TEST(Concept, EmptyIntervalIsRepresentable) {
  const Concept c = Concept::interval(S("f"), 7, 3);
  EXPECT_TRUE(c.range().empty());
  EXPECT_EQ(c.kind(), ConceptKind::Interval);
}

TEST(Concept, SizeDepthAndHashes) {
  const Concept c = Concept::conj({N("A"), Concept::exists(S("R"), Concept::exists(S("R"), N("B")))});
  EXPECT_EQ(c.depth(), 2u);
  EXPECT_EQ(c.size(), 5u);
  EXPECT_EQ(c.hash(), Concept::conj({Concept::exists(S("R"), Concept::exists(S("R"), N("B"))), N("A")}).hash());
}

TEST(FullConcept, RejectsEmptyUnion) { EXPECT_THROW(FullConcept(std::vector<Concept>{}), std::invalid_argument); }

TEST(Signature, ClassifiesBySyntacticPosition) {
  const Signature s = signature(Concept::conj({N("A"), Concept::exists(S("R"), N("B"))}));
  EXPECT_EQ(s.concepts, (std::set<Symbol>{S("A"), S("B")}));
  EXPECT_EQ(s.roles, (std::set<Symbol>{S("R")}));
  EXPECT_TRUE(s.properties.empty());

  EXPECT_TRUE(signature(MainKB{}).empty());
  EXPECT_EQ(signature(Concept::interval(S("f"), 0, 5)).properties, (std::set<Symbol>{S("f")}));
}

TEST(Partition, SplitsFuncRangeFromNameAxioms) {
  MainKB kb;
  kb.add_func(S("p"));
  kb.add_range(S("p"), S("AnyData"));
  kb.add_inclusion(S("A"), S("B"));
  kb.add_disjoint(S("A"), S("C"));
  const KBPartition parts = partition(kb);
  EXPECT_EQ(parts.k_minus.func, (std::set<Symbol>{S("p")}));
  EXPECT_EQ(parts.k_minus.range.size(), 1u);
  EXPECT_TRUE(parts.k_minus.inclusions.empty());
  EXPECT_TRUE(parts.k_minus.disjointness.empty());
  EXPECT_TRUE(parts.shifted.func.empty());
  EXPECT_TRUE(parts.shifted.range.empty());
  EXPECT_EQ(parts.shifted.inclusions.size(), 1u);
  EXPECT_EQ(parts.shifted.disjointness.size(), 1u);
  EXPECT_EQ(merge(parts), kb);
}

TEST(Partition, EmptyAndShiftOnly) {
  const KBPartition empty = partition(MainKB{});
  EXPECT_TRUE(empty.k_minus.empty());
  EXPECT_TRUE(empty.shifted.empty());

  MainKB kb;
  kb.add_inclusion(S("A"), S("B"));
  kb.add_disjoint(S("B"), S("C"));
  const KBPartition parts = partition(kb);
  EXPECT_TRUE(parts.k_minus.empty());
  EXPECT_EQ(parts.shifted, kb);
}

TEST(Partition, LosslessOnRandomKBs) {
  test::Gen gen(11);
  const auto pools = test::make_pools(8, 4, 3, 0);
  for (int i = 0; i < 200; ++i) {
    const MainKB kb = gen.kb(pools);
    const KBPartition parts = partition(kb);
    EXPECT_EQ(merge(parts), kb);
    EXPECT_EQ(partition(merge(parts)).k_minus, parts.k_minus);
    Signature sig = signature(parts.k_minus);
    sig.merge(signature(parts.shifted));
    EXPECT_EQ(sig, signature(kb));
  }
}

TEST(ValidateInstance, SharedRoleIsViolation) {
  MainKB kb;
  kb.add_func(S("has_data"));
  OracleOntology o = parse_oracle_ontology("supex A has_data B\n");
  const auto report = validate_instance(signature(kb), o.signature());
  EXPECT_FALSE(report.ok());
  EXPECT_EQ(report.names(), std::vector<std::string>{"has_data"});
}

TEST(ValidateInstance, SharedConceptNamesAreAllowed) {
  MainKB kb;
  kb.add_range(S("has_purpose"), S("Marketing"));
  const OracleOntology o = parse_oracle_ontology("sub Marketing AnyPurpose\n");
  EXPECT_TRUE(validate_instance(signature(kb), o.signature()).ok());
  EXPECT_TRUE(validate_instance(Signature{}, Signature{}).ok());
}

TEST(ValidateInstance, RoleUsedAsConceptElsewhereIsViolation) {
  Signature main;
  main.properties.insert(S("duration"));
  Signature oracle;
  oracle.concepts.insert(S("duration"));
  EXPECT_FALSE(validate_instance(main, oracle).ok());
}

}  // namespace
}  // namespace plr
