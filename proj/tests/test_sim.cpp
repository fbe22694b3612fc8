#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "support/suites.hpp"
#include "syncverif/dsl.hpp"
#include "syncverif/format.hpp"
#include "syncverif/sim.hpp"

using namespace sv;

namespace {

const Model& trains() {
  static Model m = load_model_file(svtest::corpus_dir() + "/trains.sv");
  return m;
}
const AtomicStructure& leaf(const std::string& n) { return *trains().system(n)->leaf; }
RelFile relFile(const std::string& f) { return parse_rel(read_file(svtest::corpus_dir() + "/" + f)); }

}  // namespace

TEST(Simulation, TrainIsSimulatedByItsAbstraction) {
  RelFile rf = relFile("train1_abs.rel");
  ASSERT_EQ(rf.blocks.size(), 1u);
  StageRelation rel = resolve_rel(rf.blocks[0], leaf("TRAIN1"), leaf("S-TRAIN1"));
  EXPECT_EQ(rel.pairs.size(), 6u);
  EXPECT_TRUE(check_simulation(leaf("TRAIN1"), leaf("S-TRAIN1"), rel).ok);

  // the concrete train stutters through its approach before matching a crossing
  EXPECT_TRUE(check_bisimulation(leaf("TRAIN1"), leaf("S-TRAIN1"), rel).ok());

  StageRelation noCrossing = rel;
  int crossing = leaf("TRAIN1").findStage("trans crossing()");
  std::erase_if(noCrossing.pairs, [&](const auto& pr) { return pr.first == crossing; });
  SimResult r = check_simulation(leaf("TRAIN1"), leaf("S-TRAIN1"), noCrossing);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.clause, "step");
}

TEST(Simulation, BrokenRelationsNameTheClause) {
  RelFile rf = relFile("train1_abs.rel");
  StageRelation rel = resolve_rel(rf.blocks[0], leaf("TRAIN1"), leaf("S-TRAIN1"));

  StageRelation noInit = rel;
  noInit.pairs.erase(noInit.pairs.begin());
  EXPECT_EQ(check_simulation(leaf("TRAIN1"), leaf("S-TRAIN1"), noInit).clause, "initial");

  const AtomicStructure& t = leaf("TRAIN1");
  const AtomicStructure& s = leaf("S-TRAIN1");
  StageRelation wrongLabel = rel;
  for (auto& [l, r] : wrongLabel.pairs)
    if (l == t.findStage("trans crossing()")) r = s.findStage("state{crossing=false}");
  EXPECT_EQ(check_simulation(t, s, wrongLabel).clause, "labels");
}

TEST(Simulation, CompoundRelationIsProductOfComponents) {
  RelFile rf = relFile("train_abs.rel");
  ASSERT_TRUE(rf.compound);
  std::vector<StageRelation> rels;
  for (const auto& b : rf.blocks) {
    StageRelation r = resolve_rel(b, leaf(b.left), leaf(b.right));
    EXPECT_TRUE(check_simulation(leaf(b.left), leaf(b.right), r).ok) << b.left;
    rels.push_back(r);
  }
  PlainStructure ls = split_compound(*trains().system("TRAINS"));
  PlainStructure rs = split_compound(*trains().system("SAFE-TRAINS"));
  EXPECT_TRUE(criteria_correspond(ls, rs, rels).empty());
  StageRelation prod = compose_relations(rels, ls, rs);
  EXPECT_TRUE(check_simulation(ls, rs, prod).ok);
}

TEST(Simulation, PartitionFileMatchesPredicateAbstraction) {
  const AtomicStructure& t = leaf("TRAIN1");
  PartitionFile pf = parse_partition(read_file(svtest::corpus_dir() + "/train1.part"));
  Partition fromFile = resolve_partition(pf, t);
  Partition abstraction = predicate_abstraction(t, {"isCrossing"});
  ASSERT_EQ(fromFile.size(), abstraction.size());
  for (size_t a = 0; a < t.size(); ++a)
    for (size_t b = 0; b < t.size(); ++b) EXPECT_EQ(fromFile[a] == fromFile[b], abstraction[a] == abstraction[b]);

  Quotient q = quotient(t, fromFile, {"isCrossing"});
  EXPECT_EQ(q.blocks.size(), 3u);
  EXPECT_EQ(q.structure->size(), 3u);
  EXPECT_TRUE(check_simulation(t, *q.structure, q.relation).ok);
}

TEST(Simulation, QuotientRejectsMixedBlocks) {
  const AtomicStructure& t = leaf("TRAIN1");
  Partition kinds(t.size(), 0);  // states and transitions together
  EXPECT_THROW(quotient(t, kinds, {}), InputError);
  Partition byKind(t.size());
  for (size_t g = 0; g < t.size(); ++g) byKind[g] = t.isState(static_cast<int>(g)) ? 0 : 1;
  EXPECT_THROW(quotient(t, byKind, {"isCrossing"}), InputError);
  EXPECT_NO_THROW(quotient(t, byKind, {}));
}

TEST(Simulation, UnfoldingIsBisimilar) {
  svtest::Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    AtomicRef a = svtest::random_atomic(rng, "U");
    svtest::Unfolding u = svtest::unfold_stage(rng, a);
    StageRelation rel;
    rel.pairs = u.rel;
    rel.props = {{"p0", "p0"}, {"p1", "p1"}, {"v", "v"}};
    ASSERT_TRUE(check_bisimulation(*a, *u.copy, rel).ok()) << i;
  }
}

TEST(Simulation, PropRefs) {
  QualifiedProp q = parse_prop_ref(leaf("MUTEX"), "isGranting(2)");
  EXPECT_EQ(q.key(), "MUTEX$isGranting(2)");
  EXPECT_THROW(parse_prop_ref(leaf("MUTEX"), "isGranting"), InputError);
  EXPECT_THROW(parse_prop_ref(leaf("MUTEX"), "isGranting(3)"), InputError);
  EXPECT_THROW(parse_prop_ref(leaf("MUTEX"), "nothing"), InputError);
}
