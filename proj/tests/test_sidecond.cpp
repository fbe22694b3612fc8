#include <gtest/gtest.h>

#include "support/gen.hpp"
#include "support/suites.hpp"
#include "syncverif/dsl.hpp"
#include "syncverif/sidecond.hpp"
#include "syncverif/sim.hpp"

using namespace sv;

namespace {

SystemRef sys(const std::string& file, const std::string& name) {
  static std::map<std::string, Model> cache;
  auto it = cache.find(file);
  if (it == cache.end()) it = cache.emplace(file, load_model_file(svtest::corpus_dir() + "/" + file)).first;
  return it->second.system(name);
}

}  // namespace

TEST(SideConditions, StuckDeadlocksImmediately) {
  PlainStructure p = split_compound(*sys("deadlock.sv", "STUCK"));
  auto dl = find_deadlocks(p);
  ASSERT_EQ(dl.size(), 1u);
  EXPECT_EQ(dl[0].state, p.initial);
  EXPECT_EQ(dl[0].extendable, std::vector<char>({1, 1}));
  EXPECT_EQ(check_witness(p, dl[0]), "");
}

TEST(SideConditions, FreeComponentsStarve) {
  PlainStructure p = split_compound(*sys("free.sv", "FREE"));
  EXPECT_TRUE(find_deadlocks(p).empty());
  auto st = find_starvation(p);
  EXPECT_EQ(st.size(), 8u);
  for (const auto& w : st) {
    EXPECT_EQ(w.kind, StarvationWitness::Kind::Infinite);
    EXPECT_EQ(check_witness(p, w), "");
  }
}

TEST(SideConditions, LockstepIsFair) {
  for (auto [file, name] : std::vector<std::pair<std::string, std::string>>{
           {"togglers.sv", "TOGGLERS"}, {"buffers.sv", "3BUFFERS"}, {"buffers.sv", "BUFFER1"}}) {
    PlainStructure p = split_compound(*sys(file, name));
    EXPECT_TRUE(find_deadlocks(p).empty()) << name;
    EXPECT_TRUE(find_starvation(p).empty()) << name;
  }
}

TEST(SideConditions, MutexMayFavourOneTrain) {
  PlainStructure p = split_compound(*sys("trains.sv", "SAFE-TRAINS"));
  EXPECT_TRUE(find_deadlocks(p).empty());
  auto st = find_starvation(p);
  ASSERT_FALSE(st.empty());
  for (const auto& w : st) EXPECT_EQ(check_witness(p, w), "");
}

TEST(SideConditions, TamperedWitnessesAreRejected) {
  PlainStructure stuck = split_compound(*sys("deadlock.sv", "STUCK"));
  auto dl = find_deadlocks(stuck).front();
  PlainStructure free = split_compound(*sys("free.sv", "FREE"));
  EXPECT_NE(check_witness(free, dl), "");
  dl.path.push_back(dl.state);
  EXPECT_NE(check_witness(stuck, dl), "");

  auto w = find_starvation(free).front();
  auto moved = w;
  moved.stage = (w.stage + 1) % static_cast<int>(free.componentStructs[static_cast<size_t>(w.component)]->size());
  EXPECT_NE(check_witness(free, moved), "");
  auto broken = w;
  broken.cycle.push_back(broken.cycle.front() == 0 ? 1 : 0);
  EXPECT_NE(check_witness(free, broken), "");
  auto other = w;
  other.component = 1 - w.component;
  EXPECT_NE(check_witness(free, other), "");
}

TEST(SideConditions, FollowerCondition) {
  // both values are offered from every stage
  auto r = svtest::make_atomic("R", {true, true, false, false}, {{2, 3}, {2, 3}, {0, 1}, {0, 1}},
                               {{false, true, true, false}}, {0, 0, 0, 0});
  const auto& mutex = *sys("trains.sv", "MUTEX")->leaf;
  QualifiedProp rp{"R", "p0", {}};
  QualifiedProp mp = parse_prop_ref(mutex, "isGranting(1)");
  EXPECT_TRUE(check_prop12(*r, rp, mutex, mp));
  EXPECT_FALSE(check_prop12(mutex, mp, *r, rp));
}

TEST(SideConditions, RecurrentCriteria) {
  auto t = check_prop13(*sys("togglers.sv", "TOGGLERS"));
  EXPECT_TRUE(t.holds);
  EXPECT_EQ(t.evidence.size(), 1u);
  EXPECT_FALSE(check_prop13(*sys("buffers.sv", "3BUFFERS")).holds);
  EXPECT_FALSE(check_prop13(*sys("free.sv", "FREE")).holds);
}
