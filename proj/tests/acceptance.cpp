// One line per acceptance criterion; exit status 0 iff every line passes.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support/suites.hpp"
#include "syncverif/ag.hpp"
#include "syncverif/dsl.hpp"
#include "syncverif/format.hpp"
#include "syncverif/oracle.hpp"
#include "syncverif/sim.hpp"

using namespace sv;

namespace {

constexpr double kBuffersLimit = 1.0;
constexpr double kTrainsLimit = 1.0;
constexpr double kRiverLimit = 10.0;
constexpr double kAbpLimit = 120.0;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && limit > 0 && secs >= limit) {
    o.ok = false;
    o.detail = "runtime limit exceeded";
  }
  if (!o.ok) ++failures;
  std::printf("%s %-4s %s (%.3f s%s)%s%s\n", o.ok ? "PASS" : "FAIL", id.c_str(), title.c_str(), secs,
              limit > 0 ? (", limit " + std::to_string(static_cast<int>(limit)) + " s").c_str() : "",
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
}

Model load(const std::string& f) { return load_model_file(svtest::corpus_dir() + "/" + f); }

// RIVER crossings along a path, e.g. "wolf>" (farmer leaves the near bank) or "cabbage<".
std::vector<std::string> crossings(const PlainStructure& p, const std::vector<int>& states) {
  int move = p.findProp("RIVER$move");
  int river = p.componentIndex("RIVER");
  std::vector<std::string> out;
  int lastStage = -1;
  bool farmerNear = true;
  for (int q : states) {
    int stage = p.prov[static_cast<size_t>(q)][static_cast<size_t>(river)];
    std::string desc = p.stageName(river, stage);
    std::string m = p.prop(q, move).str();
    if (desc.rfind("state", 0) == 0) farmerNear = desc.rfind("state{near={farmer", 0) == 0;
    if (stage != lastStage && m != "noMove") out.push_back(m + (farmerNear ? ">" : "<"));
    lastStage = stage;
  }
  return out;
}

std::string item(const std::string& crossing) { return crossing.substr(0, crossing.size() - 1); }

Outcome buffers() {
  Outcome o;
  Model m = load("buffers.oblig");
  for (const char* b : {"BUFFER1", "BUFFER2", "BUFFER3"}) {
    const System& s = *m.system(b);
    Verdict v = ag_check(s, parse_formula("<>isReceiving", s), parse_formula("<>isSending", s));
    o.require(v.holds, std::string(b) + " fails <>isReceiving |> <>isSending");
  }
  ComposeReport r = ag_compose(obligations_from_proof(m, "CHAIN"));
  o.require(r.derived, "CHAIN not derived");
  const System& chain = *m.system("3BUFFERS");
  o.require(model_check(chain, parse_formula("<>BUFFER1$isReceiving -> <>BUFFER3$isSending", chain)).holds,
            "direct check on the 3BUFFERS split fails");
  return o;
}

Outcome trains() {
  Outcome o;
  Model m = load("trains.sv");
  const System& safe = *m.system("SAFE-TRAINS");
  o.require(model_check(safe, parse_formula("[] ~(S-TRAIN1$isCrossing /\\ S-TRAIN2$isCrossing)", safe)).holds,
            "SAFE-TRAINS violates mutual exclusion");
  const System& mutex = *m.system("MUTEX");
  o.require(model_check(mutex, parse_formula("[] ~(isGranting(1) /\\ isGranting(2))", mutex)).holds,
            "MUTEX grants both");

  ObligationSet obl = obligations_from_proof(m, "MUTUAL-EXCLUSION");
  o.require(obl.obligations.size() == 1 && obl.obligations[0].component->name == "MUTEX" &&
                obl.obligations[0].mode == DischargeMode::Safety,
            "proof is not a single MUTEX obligation in safety mode");
  o.require(ag_compose(obl).derived, "MUTUAL-EXCLUSION not derived");

  RelFile rf = parse_rel(read_file(svtest::corpus_dir() + "/train_abs.rel"));
  std::vector<StageRelation> rels;
  for (const auto& b : rf.blocks) {
    const AtomicStructure& l = *m.system(b.left)->leaf;
    const AtomicStructure& r = *m.system(b.right)->leaf;
    rels.push_back(resolve_rel(b, l, r));
    o.require(check_simulation(l, r, rels.back()).ok, b.left + " -> " + b.right + " is not a simulation");
  }
  PlainStructure ls = split_compound(*m.system("TRAINS")), rs = split_compound(safe);
  o.require(check_simulation(ls, rs, compose_relations(rels, ls, rs)).ok, "product relation fails on the splits");
  return o;
}

Outcome riverWeak() {
  Outcome o;
  Model m = load("river_weak.sv");
  const System& s = *m.system("RIVER-W-PREV");
  PlainStructure p = split_compound(s);
  FormulaPtr alpha = parse_formula("[] ~RIVER$danger /\\ [] ~PREVIOUS$undoing", p);
  FormulaPtr gamma = parse_formula("<> RIVER$success", p);
  Verdict v = ag_check(p, alpha, gamma);
  o.require(!v.holds, "weak undoing unexpectedly reaches success");
  if (!v.holds) {
    o.require(v.trace && v.trace->kind == Trace::Kind::Lasso, "counterexample is not a lasso");
    if (v.trace) {
      o.require(!path_satisfies(p, *v.trace, fImplies(alpha, gamma)), "counterexample satisfies the statement");
      auto moves = crossings(p, v.trace->unrolled(2));
      bool wolfThenCabbage = false, adjacent = false;
      for (size_t i = 0; i < moves.size(); ++i)
        for (size_t j = i + 1; j < moves.size(); ++j) wolfThenCabbage |= moves[i] == "wolf>" && moves[j] == "cabbage<";
      for (size_t i = 1; i < moves.size(); ++i) {
        std::string a = item(moves[i - 1]), b = item(moves[i]);
        adjacent |= (a == "wolf" && b == "cabbage") || (a == "cabbage" && b == "wolf");
      }
      o.require(wolfThenCabbage, "no wolf crossing followed by a cabbage return in the counterexample");
      o.require(adjacent, "no adjacent wolf/cabbage exchange in the counterexample");
    }
  }
  // the same model with the swap ruled out by the assumption instead of by PREVIOUS
  auto follow = [](const std::string& a, const std::string& b) {
    return "(RIVER$move == " + a + " /\\ (RIVER$move == " + a + " U (RIVER$move == noMove U RIVER$move == " + b +
           ")))";
  };
  FormulaPtr strengthened = parse_formula("[] ~RIVER$danger /\\ [] ~PREVIOUS$undoing /\\ [] ~" +
                                              follow("wolf", "cabbage") + " /\\ [] ~" + follow("cabbage", "wolf"),
                                          p);
  o.require(ag_check(p, strengthened, gamma).holds, "assumption without the swap does not reach success");
  return o;
}

Outcome riverStrong() {
  Outcome o;
  Model m = load("river_strong.sv");
  const System& s = *m.system("RIVER-W-PREV");
  o.require(ag_check(s, parse_formula("[] ~RIVER$danger /\\ [] ~PREVIOUS$undoing", s),
                     parse_formula("<> RIVER$success", s))
                .holds,
            "strengthened undoing does not reach success");
  o.require(ag_compose(obligations_from_proof(m, "SUCCESS")).derived, "SUCCESS not derived");

  // enumeration over the safe compound: AVOID1/AVOID2 pin danger and undoing to false
  PlainStructure safe = split_compound(*m.system("RIVER-SAFE"));
  FormulaPtr success = parse_formula("<> RIVER$success", safe);
  // acyclic, so simple paths are all the maximal paths
  std::vector<int> color(safe.size(), 0);
  std::function<bool(int)> cyclic = [&](int q) {
    color[static_cast<size_t>(q)] = 1;
    for (int t : safe.succ[static_cast<size_t>(q)])
      if (color[static_cast<size_t>(t)] == 1 || (color[static_cast<size_t>(t)] == 0 && cyclic(t))) return true;
    color[static_cast<size_t>(q)] = 2;
    return false;
  };
  o.require(!cyclic(safe.initial), "RIVER-SAFE has a cycle; enumeration would be partial");
  std::vector<MaxPath> good;
  for_each_maximal_path(safe, safe.size(), 1, [&](const MaxPath& mp) {
    if (path_satisfies(safe, mp, success)) good.push_back(mp);
    return true;
  });
  o.require(good.size() == 2, "expected 2 success paths, found " + std::to_string(good.size()));
  if (good.size() == 2) {
    auto seq = [&](const MaxPath& mp) {
      std::vector<int> st = mp.prefix;
      st.insert(st.end(), mp.cycle.begin(), mp.cycle.end());
      return st;
    };
    auto a = seq(good[0]), b = seq(good[1]);
    o.require(a.size() == b.size(), "success paths differ in length");
    auto ma = crossings(safe, a), mb = crossings(safe, b);
    for (auto& x : ma) {
      std::string it = item(x), dir = x.substr(x.size() - 1);
      x = (it == "wolf" ? "cabbage" : it == "cabbage" ? "wolf" : it) + dir;
    }
    o.require(ma == mb, "success paths are not related by the wolf/cabbage swap");
    o.require(ma.size() == 7, "expected 7 crossings, found " + std::to_string(ma.size()));
  }
  return o;
}

Outcome abp() {
  Outcome o;
  Model m = load("abp.sv");
  const System& s = *m.system("ABP");
  PlainStructure p = split_compound(s);
  const std::string sndRcv = "[]<>SND$isActive /\\ []<>RCV$isListening";
  const std::string gamma = "[](SND$isAccepting -> (SND$isAccepting U (~SND$isAccepting U RCV$isDelivering)))";
  FormulaPtr alpha = parse_formula("[]<>MSG$isPassing /\\ []<>ACK$isPassing /\\ " + sndRcv, p);
  FormulaPtr g = parse_formula(gamma, p);
  o.require(ag_check(p, alpha, g).holds, "fair ABP violates the delivery property");
  o.require(!model_check(p, fNot(alpha)).holds, "no execution satisfies the fairness assumption");

  Verdict unfair = ag_check(p, parse_formula(sndRcv, p), g);
  o.require(!unfair.holds, "ABP without channel fairness still holds");
  if (!unfair.holds) {
    o.require(unfair.trace && unfair.trace->kind == Trace::Kind::Lasso, "counterexample is not a lasso");
    if (unfair.trace) {
      // some channel keeps losing packets and never passes one on the cycle
      bool lossForever = false;
      for (const char* ch : {"MSG", "ACK"}) {
        int c = p.componentIndex(ch);
        int passing = p.findProp(std::string(ch) + "$isPassing");
        bool loses = false, passes = false;
        for (int q : unfair.trace->cycle) {
          std::string stage = p.stageName(c, p.prov[static_cast<size_t>(q)][static_cast<size_t>(c)]);
          loses = loses || stage.rfind("trans lose", 0) == 0;
          passes = passes || p.prop(q, passing).asBool();
        }
        lossForever = lossForever || (loses && !passes);
      }
      o.require(lossForever, "cycle is not a loss-forever loop");
    }
  }
  return o;
}

}  // namespace

int main() {
  criterion("1", "buffers: components, CHAIN composition, direct check", kBuffersLimit, buffers);
  criterion("2", "trains: mutual exclusion, MUTEX, composition, simulations", kTrainsLimit, trains);
  criterion("3a", "river (weak undoing): fails with a wolf/cabbage swap; swap-free assumption holds", kRiverLimit,
            riverWeak);
  criterion("3b", "river (strong undoing): holds; exactly 2 symmetric success paths", kRiverLimit, riverStrong);
  criterion("4", "ABP: fair channels deliver; unfair channels lose forever", kAbpLimit, abp);

  using namespace svtest;
  const std::vector<std::pair<std::string, std::function<SuiteResult()>>> suites = {
      {"5a", [] { return suite_path_correspondence(); }},
      {"5b", [] { return suite_mc_oracle(11, 500); }},
      {"5c", [] { return suite_stutter(12, 300); }},
      {"5d", [] { return suite_ag_oracle(13, 100); }},
      {"5e", [] { return suite_true_assumption(14, 300); }},
      {"5f", [] { return suite_quotient(15, 300); }},
      {"5g", [] { return suite_relation_product(16, 200); }},
      {"5h", [] { return suite_lift_fair(17, 300); }},
      {"5i", [] { return suite_lift_safety(18, 400); }},
      {"5j", [] { return suite_sidecond_oracle(); }},
      {"5k", [] { return suite_bisim_preservation(19, 200); }},
      {"5l", [] { return suite_cli_determinism(); }},
      {"5m", [] { return suite_cli_roundtrip(20); }},
  };
  for (const auto& [id, run] : suites) {
    criterion(id, "suite", 0, [&] {
      SuiteResult r = run();
      Outcome o;
      o.require(r.ok, r.name + ": " + r.detail);
      o.require(r.cases > 0, r.name + ": no cases");
      if (o.ok) o.detail = r.name + ": " + r.detail;
      return o;
    });
  }
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
