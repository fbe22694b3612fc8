#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "support/suites.hpp"
#include "syncverif/dsl.hpp"
#include "syncverif/oracle.hpp"

using namespace sv;

namespace {

const Model& model(const std::string& f) {
  static std::map<std::string, Model> cache;
  auto it = cache.find(f);
  if (it == cache.end()) it = cache.emplace(f, load_model_file(svtest::corpus_dir() + "/" + f)).first;
  return it->second;
}

std::vector<const AtomicStructure*> raw(const System& s) {
  std::vector<const AtomicStructure*> out;
  for (const auto& a : atoms(s)) out.push_back(a.get());
  return out;
}

}  // namespace

TEST(Oracle, MaximalPathsOfSmallStructures) {
  PlainStructure buf = split_atomic(*model("buffers.sv").system("BUFFER1")->leaf);
  auto paths = enumerate_maximal_paths(buf, 8);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].kind, Trace::Kind::Lasso);
  EXPECT_TRUE(paths[0].prefix.empty());
  EXPECT_EQ(paths[0].cycle.size(), 4u);

  PlainStructure stuck = split_compound(*model("deadlock.sv").system("STUCK"));
  paths = enumerate_maximal_paths(stuck, 4);
  ASSERT_EQ(paths.size(), 1u);
  EXPECT_EQ(paths[0].kind, Trace::Kind::Finite);
}

TEST(Oracle, StreamingStopsEarly) {
  PlainStructure p = split_compound(*model("trains.sv").system("TRAINS"));
  size_t seen = 0;
  EXPECT_FALSE(for_each_maximal_path(p, 10, 1, [&](const MaxPath&) { return ++seen < 3; }));
  EXPECT_EQ(seen, 3u);
  EXPECT_THROW(enumerate_maximal_paths(p, 0), InputError);
}

TEST(Oracle, SplitPathsCorrespondToComponentPaths) {
  for (auto [file, sys, bound] : std::vector<std::tuple<std::string, std::string, size_t>>{
           {"trains.sv", "TRAINS", 7}, {"buffers.sv", "3BUFFERS", 7}, {"togglers.sv", "TOGGLERS", 8}}) {
    Prop5Report r = check_prop5(*model(file).system(sys), bound);
    EXPECT_TRUE(r.ok()) << sys << ": " << (r.mismatches.empty() ? "" : r.mismatches.front());
    EXPECT_GT(r.splitPaths, 0u);
    EXPECT_GT(r.compatibleTuples, 0u);
  }
}

TEST(Oracle, IndexRelationsForProjectedPaths) {
  const System& s = *model("trains.sv").system("TRAINS");
  PlainStructure p = split_compound(s);
  auto comps = raw(s);
  size_t found = 0;
  for (const auto& path : enumerate_finite_paths(p, 6)) {
    std::vector<std::vector<int>> proj;
    for (size_t c = 0; c < comps.size(); ++c) proj.push_back(project_path(p, path, static_cast<int>(c)));
    auto rel = find_index_relation(comps, proj, criteria(s));
    ASSERT_TRUE(rel);
    EXPECT_TRUE(validate_index_relation(comps, proj, criteria(s), *rel).empty());
    ++found;
  }
  EXPECT_GT(found, 10u);

  // TRAIN1 crosses while the controller never grants anything
  const AtomicStructure& t = *comps[0];
  std::vector<int> crossing{t.initial};
  while (t.isState(crossing.back()) || t.stages[static_cast<size_t>(crossing.back())].term.name != "crossing")
    crossing.push_back(t.succ[static_cast<size_t>(crossing.back())].back());
  std::vector<std::vector<int>> bad{crossing, {comps[1]->initial}, {comps[2]->initial}};
  EXPECT_FALSE(find_index_relation(comps, bad, criteria(s)));
}

TEST(Oracle, TamperedIndexRelationIsRejected) {
  const System& s = *model("trains.sv").system("TRAINS");
  PlainStructure p = split_compound(s);
  auto comps = raw(s);
  auto path = enumerate_finite_paths(p, 5).back();
  std::vector<std::vector<int>> proj;
  for (size_t c = 0; c < comps.size(); ++c) proj.push_back(project_path(p, path, static_cast<int>(c)));
  auto rel = find_index_relation(comps, proj, criteria(s));
  ASSERT_TRUE(rel);
  ASSERT_GT(rel->tuples.size(), 1u);
  IndexRelation swapped = *rel;
  std::swap(swapped.tuples.front(), swapped.tuples.back());
  EXPECT_FALSE(validate_index_relation(comps, proj, criteria(s), swapped).empty());
}

TEST(Oracle, LocalStepsKeepCompatibility) {
  svtest::Rng rng(51);
  size_t applicable = 0;
  for (int i = 0; i < 400; ++i) {
    auto rc = svtest::random_compound(rng, 3, 5, 2);
    if (rc.comps.size() < 2) continue;
    std::vector<const AtomicStructure*> comps;
    for (const auto& c : rc.comps) comps.push_back(c.get());
    PlainStructure p = split_compound(*rc.system);
    for (int k = 0; k < 10; ++k) {
      int q = std::uniform_int_distribution<int>(0, static_cast<int>(p.size()) - 1)(rng);
      std::vector<int> stages = p.prov[static_cast<size_t>(q)], next = stages;
      for (size_t n = 0; n < comps.size(); ++n) {
        const auto& ss = comps[n]->succ[static_cast<size_t>(stages[n])];
        if (!ss.empty() && rng() % 2) next[n] = ss[rng() % ss.size()];
      }
      size_t split = 1 + rng() % (comps.size() - 1);
      Prop6Result r = check_prop6(comps, split, criteria(*rc.system), stages, next);
      if (r.applicable) {
        ++applicable;
        ASSERT_TRUE(r.holds) << "sample " << i;
      }
    }
  }
  EXPECT_GT(applicable, 100u);
}

TEST(Oracle, PathSatisfactionOnHandWords) {
  PlainStructure p = split_atomic(*model("buffers.sv").system("BUFFER1")->leaf);
  MaxPath loop = enumerate_maximal_paths(p, 8).front();
  EXPECT_TRUE(path_satisfies(p, loop, parse_formula("[]<>isSending /\\ []<>isReceiving", p)));
  EXPECT_FALSE(path_satisfies(p, loop, parse_formula("<>[]isSending", p)));
  MaxPath cut;
  cut.prefix = {loop.cycle[0], loop.cycle[1]};
  EXPECT_TRUE(path_satisfies(p, cut, parse_formula("<>isReceiving /\\ []~isSending", p)));
}
