#include <gtest/gtest.h>

#include <cstdlib>

#include "support/gen.hpp"
#include "support/suites.hpp"
#include "syncverif/dsl.hpp"

using namespace sv;

namespace {

const Model& model(const std::string& f) {
  static std::map<std::string, Model> cache;
  auto it = cache.find(f);
  if (it == cache.end()) it = cache.emplace(f, load_model_file(svtest::corpus_dir() + "/" + f)).first;
  return it->second;
}

}  // namespace

TEST(Build, AtomicSplitKeepsEveryStage) {
  const AtomicStructure& t = *model("trains.sv").system("TRAIN1")->leaf;
  PlainStructure p = split_atomic(t);
  EXPECT_EQ(p.size(), t.size());
  EXPECT_EQ(p.numEdges(), 6u);
  EXPECT_EQ(p.components, std::vector<std::string>({"TRAIN1"}));
  for (size_t q = 0; q < p.size(); ++q) EXPECT_EQ(p.prov[q][0], static_cast<int>(q));
}

TEST(Build, SplitStatesAreCompatibleTuples) {
  const System& s = *model("trains.sv").system("TRAINS");
  PlainStructure p = split_compound(s);
  for (size_t q = 0; q < p.size(); ++q) {
    std::map<std::string, std::pair<const AtomicStructure*, int>> stages;
    for (size_t c = 0; c < p.components.size(); ++c)
      stages[p.components[c]] = {p.componentStructs[c].get(), p.prov[q][c]};
    EXPECT_TRUE(compatible_stages(stages, criteria(s))) << q;
  }
}

TEST(Build, EveryEdgeMovesSomeComponentLocally) {
  PlainStructure p = split_compound(*model("abp.sv").system("ABP"));
  for (size_t q = 0; q < p.size(); ++q)
    for (int r : p.succ[q]) {
      bool moved = false;
      for (size_t c = 0; c < p.components.size(); ++c) {
        int a = p.prov[q][c], b = p.prov[static_cast<size_t>(r)][c];
        if (a == b) continue;
        moved = true;
        const auto& ss = p.componentStructs[c]->succ[static_cast<size_t>(a)];
        ASSERT_NE(std::find(ss.begin(), ss.end(), b), ss.end());
      }
      EXPECT_TRUE(moved);
    }
}

TEST(Build, NestingDoesNotMatter) {
  const System& nested = *model("river_strong.sv").system("RIVER-SAFE");
  PlainStructure a = split_compound(nested);
  PlainStructure b = split_compound(*flatten(nested));
  EXPECT_TRUE(isomorphic(a, b));
  std::vector<PlainStructure> parts;
  for (const auto& c : atoms(nested)) parts.push_back(split_atomic(c));
  EXPECT_TRUE(isomorphic(a, compose_plain(parts, criteria(nested))));
}

TEST(Build, IsomorphismNoticesMissingEdges) {
  PlainStructure a = split_compound(*model("trains.sv").system("TRAINS"));
  PlainStructure b = a;
  for (auto& ss : b.succ)
    if (!ss.empty()) {
      ss.pop_back();
      break;
    }
  EXPECT_FALSE(isomorphic(a, b));
}

TEST(Build, ProjectionRemovesRepeats) {
  PlainStructure p = split_compound(*model("trains.sv").system("TRAINS"));
  std::vector<int> path{p.initial};
  for (int k = 0; k < 8; ++k) path.push_back(p.succ[static_cast<size_t>(path.back())].front());
  for (int c = 0; c < 3; ++c) {
    auto proj = project_path(p, path, c);
    for (size_t i = 1; i < proj.size(); ++i) EXPECT_NE(proj[i], proj[i - 1]);
    EXPECT_EQ(proj.front(), project_state(p, path.front(), c));
    EXPECT_EQ(proj.back(), project_state(p, path.back(), c));
  }
}

TEST(Build, BoundIsEnforced) {
  const System& abp = *model("abp.sv").system("ABP");
  EXPECT_THROW(split_compound(abp, 5), ResourceError);
  EXPECT_NO_THROW(split_compound(abp));
}

TEST(Build, BoundFromEnvironment) {
  ::setenv("SYNCVERIF_MAX_STATES", "123", 1);
  EXPECT_EQ(defaultBound(), 123u);
  ::unsetenv("SYNCVERIF_MAX_STATES");
  EXPECT_EQ(defaultBound(), kDefaultMaxStates);
}

TEST(Build, RandomCompoundsDependOnlyOnAtomsAndCriteria) {
  svtest::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    auto rc = svtest::random_compound(rng);
    if (rc.comps.size() < 2) continue;  // atomic splits keep unreachable stages
    PlainStructure p = split_compound(*rc.system);
    std::vector<PlainStructure> parts;
    for (const auto& c : rc.comps) parts.push_back(split_atomic(c));
    PlainStructure q = compose_plain(parts, criteria(*rc.system));
    ASSERT_TRUE(isomorphic(p, q)) << i;
  }
}
