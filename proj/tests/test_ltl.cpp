#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "support/gen.hpp"
#include "support/suites.hpp"
#include "syncverif/ag.hpp"
#include "syncverif/dsl.hpp"
#include "syncverif/ltl.hpp"
#include "syncverif/oracle.hpp"

using namespace sv;

namespace {

const Model& model(const std::string& f) {
  static std::map<std::string, Model> cache;
  auto it = cache.find(f);
  if (it == cache.end()) it = cache.emplace(f, load_model_file(svtest::corpus_dir() + "/" + f)).first;
  return it->second;
}

Verdict check(const std::string& file, const std::string& sys, const std::string& formula) {
  const System& s = *model(file).system(sys);
  return model_check(s, parse_formula(formula, s));
}

// Lasso word acceptance by explicit search over (location, position) pairs.
bool accepts(const BuchiAutomaton& a, const std::vector<uint64_t>& prefix, const std::vector<uint64_t>& cycle) {
  std::vector<uint64_t> w = prefix;
  w.insert(w.end(), cycle.begin(), cycle.end());
  const size_t n = w.size(), loop = prefix.size();
  auto nextPos = [&](size_t i) { return i + 1 < n ? i + 1 : loop; };
  auto id = [&](int l, size_t i) { return static_cast<size_t>(l) * n + i; };
  std::vector<std::vector<size_t>> succ(a.size() * n);
  for (size_t l = 0; l < a.size(); ++l)
    for (size_t i = 0; i < n; ++i)
      for (int m : a.succ[l])
        if (a.admits(m, w[nextPos(i)])) succ[id(static_cast<int>(l), i)].push_back(id(m, nextPos(i)));
  std::vector<char> reach(succ.size(), 0);
  std::vector<size_t> stack;
  for (int l : a.initial)
    if (a.admits(l, w[0]) && !reach[id(l, 0)]) {
      reach[id(l, 0)] = 1;
      stack.push_back(id(l, 0));
    }
  while (!stack.empty()) {
    size_t u = stack.back();
    stack.pop_back();
    for (size_t v : succ[u])
      if (!reach[v]) {
        reach[v] = 1;
        stack.push_back(v);
      }
  }
  for (size_t u = 0; u < succ.size(); ++u) {
    if (!reach[u] || !a.accepting[u / n] || u % n < loop) continue;
    std::vector<char> seen(succ.size(), 0);
    std::vector<size_t> st = succ[u];
    while (!st.empty()) {
      size_t v = st.back();
      st.pop_back();
      if (v == u) return true;
      if (seen[v]) continue;
      seen[v] = 1;
      for (size_t x : succ[v]) st.push_back(x);
    }
  }
  return false;
}

}  // namespace

TEST(Ltl, KnownVerdicts) {
  EXPECT_TRUE(check("trains.sv", "SAFE-TRAINS", "[] ~(S-TRAIN1$isCrossing /\\ S-TRAIN2$isCrossing)").holds);
  EXPECT_TRUE(check("trains.sv", "TRAINS", "[] ~(TRAIN1$isCrossing /\\ TRAIN2$isCrossing)").holds);
  EXPECT_TRUE(check("trains.sv", "MUTEX", "[] ~(isGranting(1) /\\ isGranting(2))").holds);
  EXPECT_TRUE(check("buffers.sv", "BUFFER1", "<>isReceiving -> <>isSending").holds);
  EXPECT_FALSE(check("trains.sv", "MUTEX", "<>isGranting(1)").holds);
  EXPECT_FALSE(check("buffers.sv", "BUFFER1", "[] ~isSending").holds);
}

TEST(Ltl, CounterexamplesViolateTheFormula) {
  for (auto [file, sys, text] : std::vector<std::tuple<std::string, std::string, std::string>>{
           {"trains.sv", "MUTEX", "<>isGranting(1)"},
           {"buffers.sv", "BUFFER1", "[] ~isSending"},
           {"trains.sv", "TRAINS", "[]<>TRAIN1$isCrossing"},
           {"deadlock.sv", "STUCK", "<>A$started"}}) {
    const System& s = *model(file).system(sys);
    PlainStructure p = split_compound(s);
    FormulaPtr f = parse_formula(text, p);
    Verdict v = model_check(p, f);
    ASSERT_FALSE(v.holds) << text;
    ASSERT_TRUE(v.trace) << text;
    EXPECT_FALSE(path_satisfies(p, *v.trace, f)) << text;
  }
}

TEST(Ltl, FinitePathsAreMaximal) {
  // STUCK deadlocks at once, so its only maximal path is finite
  PlainStructure p = split_compound(*model("deadlock.sv").system("STUCK"));
  Verdict v = model_check(p, parse_formula("<>A$started", p));
  ASSERT_TRUE(v.trace);
  EXPECT_EQ(v.trace->kind, Trace::Kind::Finite);
  EXPECT_TRUE(p.succ[static_cast<size_t>(v.trace->prefix.back())].empty());
}

TEST(Ltl, StutterCompletionMarksTerminalStates) {
  PlainStructure p = split_compound(*model("deadlock.sv").system("STUCK"));
  Completed c = stutter_complete(p);
  for (size_t q = 0; q < p.size(); ++q) {
    EXPECT_EQ(c.completed[q] != 0, p.succ[q].empty());
    EXPECT_FALSE(c.structure.succ[q].empty());
  }
}

TEST(Ltl, Validity) {
  PlainStructure p = split_atomic(*model("buffers.sv").system("BUFFER1")->leaf);
  auto valid = [&](const std::string& t) { return check_validity(parse_formula(t, p)).valid; };
  EXPECT_TRUE(valid("isSending \\/ ~isSending"));
  EXPECT_TRUE(valid("[]isSending -> <>isSending"));
  EXPECT_TRUE(valid("(isSending U isReceiving) -> <>isReceiving"));
  EXPECT_TRUE(valid("[]<>isSending <-> ~<>[]~isSending"));
  EXPECT_FALSE(valid("<>isSending -> []isSending"));
  EXPECT_FALSE(valid("[]<>isSending -> <>[]isSending"));

  FormulaPtr f = parse_formula("<>isSending -> []isSending", p);
  Validity v = check_validity(f);
  ASSERT_FALSE(v.valid);
  ASSERT_FALSE(v.cycle.empty());
  EXPECT_FALSE(word_satisfies(v.atoms, v.prefix, v.cycle, f));
}

TEST(Ltl, BuchiAgreesWithWordSemantics) {
  svtest::Rng rng(31);
  size_t accepted = 0, total = 0;
  for (int i = 0; i < 150; ++i) {
    auto rc = svtest::random_compound(rng, 2, 3, 1);
    PlainStructure p = split_compound(*rc.system);
    FormulaPtr f = parse_formula(svtest::random_formula(rng, svtest::atom_texts(rc.comps)), p);
    Standardized st = standardize(f);
    BuchiAutomaton a = ltl_to_buchi(st.formula, st.atoms);
    const uint64_t letters = uint64_t{1} << st.atoms.size();
    for (int w = 0; w < 20; ++w) {
      std::vector<uint64_t> pre(std::uniform_int_distribution<size_t>(0, 3)(rng));
      std::vector<uint64_t> cyc(std::uniform_int_distribution<size_t>(1, 3)(rng));
      for (auto& x : pre) x = std::uniform_int_distribution<uint64_t>(0, letters - 1)(rng);
      for (auto& x : cyc) x = std::uniform_int_distribution<uint64_t>(0, letters - 1)(rng);
      bool sem = word_satisfies(st.atoms, pre, cyc, st.formula);
      ASSERT_EQ(accepts(a, pre, cyc), sem) << printFormula(*st.formula);
      accepted += sem;
      ++total;
    }
  }
  EXPECT_GT(accepted, 0u);
  EXPECT_LT(accepted, total);
}

TEST(Ltl, SafetyFragment) {
  PlainStructure p = split_atomic(*model("buffers.sv").system("BUFFER1")->leaf);
  auto safe = [&](const std::string& t) { return is_safety(parse_formula(t, p)); };
  EXPECT_TRUE(safe("[] ~isSending"));
  EXPECT_TRUE(safe("isSending W isReceiving"));
  EXPECT_TRUE(safe("[](isSending -> [] isReceiving)"));
  EXPECT_TRUE(safe("~<>isSending"));
  EXPECT_FALSE(safe("<>isSending"));
  EXPECT_FALSE(safe("[]<>isSending"));
  EXPECT_FALSE(safe("isSending U isReceiving"));
}

TEST(Ltl, ExistsExtension) {
  PlainStructure p = split_atomic(*model("buffers.sv").system("BUFFER1")->leaf);
  EXPECT_TRUE(exists_extension_satisfying(p, {p.initial}, parse_formula("<>isSending", p)));
  EXPECT_FALSE(exists_extension_satisfying(p, {p.initial}, parse_formula("[]~isReceiving", p)));
}
