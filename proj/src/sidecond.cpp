#include "syncverif/sidecond.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "syncverif/dsl.hpp"
#include "syncverif/ltl.hpp"

namespace sv {

namespace {

// Shortest path from the initial state to every state (BFS parents).
std::vector<int> bfsParents(const PlainStructure& p) {
  std::vector<int> parent(p.size(), -2);
  std::deque<int> q{p.initial};
  parent[static_cast<size_t>(p.initial)] = -1;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int t : p.succ[static_cast<size_t>(s)])
      if (parent[static_cast<size_t>(t)] == -2) {
        parent[static_cast<size_t>(t)] = s;
        q.push_back(t);
      }
  }
  return parent;
}

std::vector<int> pathTo(const std::vector<int>& parent, int s) {
  std::vector<int> out;
  for (int x = s; x >= 0; x = parent[static_cast<size_t>(x)]) out.push_back(x);
  std::reverse(out.begin(), out.end());
  return out;
}

void needComponents(const PlainStructure& p) {
  if (p.componentStructs.empty()) throw InputError("deadlock and fairness analysis need component structures");
}

// Some cycle inside the states accepted by `inside`, or empty.
std::vector<int> findCycle(const PlainStructure& p, const std::function<bool(int)>& inside) {
  const size_t n = p.size();
  std::vector<char> color(n, 0);  // 0 new, 1 on stack, 2 done
  for (size_t root = 0; root < n; ++root) {
    if (color[root] || !inside(static_cast<int>(root))) continue;
    std::vector<std::pair<int, size_t>> st{{static_cast<int>(root), 0}};
    color[root] = 1;
    while (!st.empty()) {
      auto& [s, i] = st.back();
      const auto& ss = p.succ[static_cast<size_t>(s)];
      if (i == ss.size()) {
        color[static_cast<size_t>(s)] = 2;
        st.pop_back();
        continue;
      }
      int t = ss[i++];
      if (!inside(t)) continue;
      if (color[static_cast<size_t>(t)] == 1) {
        std::vector<int> cyc;
        bool on = false;
        for (auto& fr : st) {
          on = on || fr.first == t;
          if (on) cyc.push_back(fr.first);
        }
        return cyc;
      }
      if (color[static_cast<size_t>(t)] == 0) {
        color[static_cast<size_t>(t)] = 1;
        st.push_back({t, 0});
      }
    }
  }
  return {};
}

bool adjacent(const PlainStructure& p, int a, int b) {
  const auto& ss = p.succ[static_cast<size_t>(a)];
  return std::find(ss.begin(), ss.end(), b) != ss.end();
}

std::string checkPath(const PlainStructure& p, const std::vector<int>& path) {
  if (path.empty() || path.front() != p.initial) return "witness path does not start at the initial state";
  for (size_t i = 0; i + 1 < path.size(); ++i)
    if (!adjacent(p, path[i], path[i + 1])) return "witness path is not a path";
  return "";
}

}  // namespace

std::vector<DeadlockWitness> find_deadlocks(const PlainStructure& split) {
  needComponents(split);
  auto parent = bfsParents(split);
  std::vector<DeadlockWitness> out;
  for (size_t s = 0; s < split.size(); ++s) {
    if (!split.succ[s].empty() || parent[s] == -2) continue;
    DeadlockWitness w;
    w.state = static_cast<int>(s);
    bool all = true;
    for (size_t c = 0; c < split.components.size(); ++c) {
      bool e = split.locallyExtendable(static_cast<int>(c), split.prov[s][c]);
      w.extendable.push_back(e);
      all = all && e;
    }
    if (!all) continue;
    w.path = pathTo(parent, w.state);
    out.push_back(std::move(w));
  }
  return out;
}

std::vector<DeadlockWitness> find_deadlocks(const System& s, size_t bound) {
  return find_deadlocks(split_compound(s, bound));
}

std::vector<StarvationWitness> find_starvation(const PlainStructure& split) {
  needComponents(split);
  auto parent = bfsParents(split);
  const size_t N = split.components.size();
  std::vector<StarvationWitness> out;
  for (size_t s = 0; s < split.size(); ++s) {
    if (!split.succ[s].empty() || parent[s] == -2) continue;
    std::vector<int> ext;
    for (size_t c = 0; c < N; ++c)
      if (split.locallyExtendable(static_cast<int>(c), split.prov[s][c])) ext.push_back(static_cast<int>(c));
    if (ext.empty() || ext.size() == N) continue;
    for (int c : ext) {
      StarvationWitness w;
      w.kind = StarvationWitness::Kind::Finite;
      w.component = c;
      w.stage = split.prov[s][static_cast<size_t>(c)];
      w.prefix = pathTo(parent, static_cast<int>(s));
      out.push_back(std::move(w));
    }
  }
  for (size_t c = 0; c < N; ++c) {
    const AtomicStructure& a = *split.componentStructs[c];
    for (size_t g = 0; g < a.size(); ++g) {
      if (a.succ[g].empty()) continue;
      auto cyc = findCycle(split, [&](int q) {
        return parent[static_cast<size_t>(q)] != -2 && split.prov[static_cast<size_t>(q)][c] == static_cast<int>(g);
      });
      if (cyc.empty()) continue;
      StarvationWitness w;
      w.kind = StarvationWitness::Kind::Infinite;
      w.component = static_cast<int>(c);
      w.stage = static_cast<int>(g);
      w.prefix = pathTo(parent, cyc.front());
      w.prefix.pop_back();
      w.cycle = std::move(cyc);
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::vector<StarvationWitness> find_starvation(const System& s, size_t bound) {
  return find_starvation(split_compound(s, bound));
}

std::string check_witness(const PlainStructure& split, const DeadlockWitness& w) {
  if (auto e = checkPath(split, w.path); !e.empty()) return e;
  if (w.path.back() != w.state) return "witness path does not end at the deadlocked state";
  if (!split.succ[static_cast<size_t>(w.state)].empty()) return "deadlocked state has successors";
  for (size_t c = 0; c < split.components.size(); ++c)
    if (!split.locallyExtendable(static_cast<int>(c), split.prov[static_cast<size_t>(w.state)][c]))
      return "component " + split.components[c] + " is locally terminal";
  return "";
}

std::string check_witness(const PlainStructure& split, const StarvationWitness& w) {
  size_t c = static_cast<size_t>(w.component);
  if (!split.locallyExtendable(w.component, w.stage)) return "frozen stage has no local successor";
  if (w.kind == StarvationWitness::Kind::Finite) {
    if (auto e = checkPath(split, w.prefix); !e.empty()) return e;
    int last = w.prefix.back();
    if (!split.succ[static_cast<size_t>(last)].empty()) return "finite witness does not end at a terminal state";
    if (split.prov[static_cast<size_t>(last)][c] != w.stage) return "component is not at the frozen stage";
    return "";
  }
  if (w.cycle.empty()) return "infinite witness without a cycle";
  std::vector<int> full = w.prefix;
  full.insert(full.end(), w.cycle.begin(), w.cycle.end());
  if (auto e = checkPath(split, full); !e.empty()) return e;
  if (!adjacent(split, w.cycle.back(), w.cycle.front())) return "witness cycle does not close";
  for (int q : w.cycle)
    if (split.prov[static_cast<size_t>(q)][c] != w.stage) return "component moves along the witness cycle";
  return "";
}

bool check_prop12(const AtomicStructure& receiver, const QualifiedProp& receiverProp, const AtomicStructure& partner,
                  const QualifiedProp& partnerProp) {
  std::set<Value> attained;
  for (size_t g = 0; g < partner.size(); ++g) attained.insert(eval_property(partner, static_cast<int>(g), partnerProp));
  for (size_t g = 0; g < receiver.size(); ++g) {
    if (receiver.succ[g].empty()) continue;
    std::set<Value> offered;
    for (int h : receiver.succ[g]) offered.insert(eval_property(receiver, h, receiverProp));
    for (const auto& v : attained)
      if (!offered.count(v)) return false;
  }
  return true;
}

Prop13Result check_prop13(const System& s) {
  Prop13Result r;
  auto comps = atoms(s);
  auto crit = criteria(s);
  auto recurrent = [&](const AtomicStructure& a, const QualifiedProp& q) {
    const PropertyDef& def = resolveProp(a, q);
    if (def.codomain->kind != ValueType::Kind::Bool) return false;
    std::string k = q.key();
    std::string text = "[]<>(" + k + " == true) /\\ []<>(" + k + " == false)";
    auto leaf = makeLeaf(std::make_shared<AtomicStructure>(a));
    return model_check(*leaf, parse_formula(text, *leaf)).holds;
  };
  for (size_t i = 0; i < comps.size(); ++i)
    for (size_t j = i + 1; j < comps.size(); ++j) {
      const std::string& a = comps[i]->name;
      const std::string& b = comps[j]->name;
      bool found = false;
      for (const auto& c : crit) {
        bool ab = c.left.component == a && c.right.component == b;
        bool ba = c.left.component == b && c.right.component == a;
        if (!ab && !ba) continue;
        const AtomicStructure& l = *findAtom(s, c.left.component);
        const AtomicStructure& rr = *findAtom(s, c.right.component);
        if (recurrent(l, c.left) && recurrent(rr, c.right)) {
          r.evidence.push_back(a + "/" + b + ": " + c.str());
          found = true;
          break;
        }
      }
      if (!found) {
        r.holds = false;
        r.evidence.push_back(a + "/" + b + ": no recurrent boolean criterion");
      }
    }
  return r;
}

}  // namespace sv
