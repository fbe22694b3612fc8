#include "syncverif/ltl.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>

namespace sv {

Value eval_expr(const PlainStructure& p, int state, const Expr& e) {
  std::function<Value(const QualifiedProp&)> f = [&](const QualifiedProp& q) {
    int k = p.findProp(q.key());
    if (k < 0) throw InputError("unknown property " + q.key());
    return p.prop(state, k);
  };
  EvalEnv env;
  env.prop = &f;
  return evalExpr(e, env);
}

Value eval_expr(const System& s, const std::map<std::string, int>& stages, const Expr& e) {
  std::function<Value(const QualifiedProp&)> f = [&](const QualifiedProp& q) {
    const AtomicStructure* a = findAtom(s, q.component);
    if (!a) throw InputError("unknown component " + q.component);
    auto it = stages.find(q.component);
    if (it == stages.end()) throw InputError("no stage given for " + q.component);
    return eval_property(*a, it->second, q);
  };
  EvalEnv env;
  env.prop = &f;
  return evalExpr(e, env);
}

namespace {

// Evaluates atoms over a plain structure with property lookups resolved once.
struct AtomEvaluator {
  const PlainStructure& p;
  std::unordered_map<std::string, int> idx;
  int state = 0;
  std::function<Value(const QualifiedProp&)> fn;

  explicit AtomEvaluator(const PlainStructure& ps) : p(ps) {
    for (size_t k = 0; k < p.propKeys.size(); ++k) idx.emplace(p.propKeys[k].key(), static_cast<int>(k));
    fn = [this](const QualifiedProp& q) {
      auto it = idx.find(q.key());
      if (it == idx.end()) throw InputError("unknown property " + q.key());
      return p.prop(state, it->second);
    };
  }
  bool holds(int s, const Atom& a) {
    state = s;
    EvalEnv env;
    env.prop = &fn;
    return evalAtom(a, env);
  }
};

}  // namespace

bool eval_atom(const PlainStructure& p, int state, const Atom& a) { return AtomEvaluator(p).holds(state, a); }

int Standardized::index(const std::string& key) const {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i]->key == key) return static_cast<int>(i);
  return -1;
}

Standardized standardize(const FormulaPtr& f) {
  Standardized out;
  std::function<FormulaPtr(const FormulaPtr&)> walk = [&](const FormulaPtr& g) -> FormulaPtr {
    using Op = Formula::Op;
    switch (g->op) {
      case Op::True:
      case Op::False: return g;
      case Op::Atom: {
        int k = out.index(g->atom->key);
        if (k < 0) {
          out.atoms.push_back(g->atom);
          return g;
        }
        return fAtom(out.atoms[static_cast<size_t>(k)]);
      }
      case Op::Not: return fNot(walk(g->a));
      case Op::And: return fAnd(walk(g->a), walk(g->b));
      case Op::Or: return fOr(walk(g->a), walk(g->b));
      case Op::Until: return fUntil(walk(g->a), walk(g->b));
      case Op::Release: return fRelease(walk(g->a), walk(g->b));
    }
    return g;
  };
  out.formula = walk(f);
  return out;
}

KripkeLabeling label(const PlainStructure& p, const std::vector<AtomRef>& atoms) {
  if (atoms.size() > 64) throw ResourceError("more than 64 distinct atoms");
  KripkeLabeling k;
  k.atoms = atoms;
  k.labels.assign(p.size(), 0);
  AtomEvaluator ev(p);
  for (size_t s = 0; s < p.size(); ++s)
    for (size_t i = 0; i < atoms.size(); ++i)
      if (ev.holds(static_cast<int>(s), *atoms[i])) k.labels[s] |= uint64_t(1) << i;
  return k;
}

Completed stutter_complete(const PlainStructure& p) {
  Completed c{p, std::vector<char>(p.size(), 0)};
  for (size_t s = 0; s < p.size(); ++s)
    if (c.structure.succ[s].empty()) {
      c.structure.succ[s].push_back(static_cast<int>(s));
      c.completed[s] = 1;
    }
  return c;
}

std::string BuchiAutomaton::guard(int loc, const std::vector<AtomRef>& atoms) const {
  std::string g;
  for (size_t i = 0; i < numAtoms; ++i) {
    uint64_t bit = uint64_t(1) << i;
    if (pos[static_cast<size_t>(loc)] & bit) g += (g.empty() ? "" : " /\\ ") + std::string("(") + atoms[i]->key + ")";
    if (neg[static_cast<size_t>(loc)] & bit) g += (g.empty() ? "" : " /\\ ") + std::string("~(") + atoms[i]->key + ")";
  }
  return g.empty() ? "true" : g;
}

namespace {

struct Closure {
  struct Sub {
    Formula::Op op;
    int a = -1, b = -1;
    int atom = -1;  // for Atom and Not(Atom)
  };
  std::vector<Sub> subs;
  std::map<std::tuple<int, int, int, int>, int> ids;
  const std::unordered_map<std::string, int>& atomIdx;

  explicit Closure(const std::unordered_map<std::string, int>& ai) : atomIdx(ai) {}

  int intern(const Formula& f) {
    Sub s{f.op};
    if (f.op == Formula::Op::Atom) {
      auto it = atomIdx.find(f.atom->key);
      if (it == atomIdx.end()) throw InputError("atom (" + f.atom->key + ") missing from the atom set");
      s.atom = it->second;
    } else if (f.op == Formula::Op::Not) {
      if (f.a->op != Formula::Op::Atom) throw InputError("formula is not in negation normal form");
      s.atom = intern(*f.a);
      s.atom = subs[static_cast<size_t>(s.atom)].atom;
    } else if (f.a) {
      s.a = intern(*f.a);
      if (f.b) s.b = intern(*f.b);
    }
    auto key = std::make_tuple(static_cast<int>(s.op), s.a, s.b, s.atom);
    if (auto it = ids.find(key); it != ids.end()) return it->second;
    subs.push_back(s);
    int id = static_cast<int>(subs.size() - 1);
    ids.emplace(key, id);
    return id;
  }
};

struct GNode {
  std::set<int> incoming, fresh, old, next;
  uint64_t pos = 0, neg = 0;
};

}  // namespace

BuchiAutomaton ltl_to_buchi(const FormulaPtr& f, const std::vector<AtomRef>& atoms, size_t cap) {
  if (atoms.size() > 64) throw ResourceError("more than 64 distinct atoms");
  std::unordered_map<std::string, int> atomIdx;
  for (size_t i = 0; i < atoms.size(); ++i) atomIdx.emplace(atoms[i]->key, static_cast<int>(i));
  Closure cl(atomIdx);
  int root = cl.intern(*nnf(f));

  constexpr int kInit = -1;
  std::vector<GNode> nodes;
  std::map<std::pair<std::set<int>, std::set<int>>, int> byKey;
  std::vector<GNode> work;
  GNode start;
  start.incoming = {kInit};
  start.fresh = {root};
  work.push_back(start);
  using Op = Formula::Op;
  while (!work.empty()) {
    GNode n = std::move(work.back());
    work.pop_back();
    if (n.fresh.empty()) {
      auto key = std::make_pair(n.old, n.next);
      if (auto it = byKey.find(key); it != byKey.end()) {
        nodes[static_cast<size_t>(it->second)].incoming.insert(n.incoming.begin(), n.incoming.end());
        continue;
      }
      if (nodes.size() >= cap) throw ResourceError("automaton exceeds " + std::to_string(cap) + " nodes");
      int id = static_cast<int>(nodes.size());
      byKey.emplace(key, id);
      GNode succ;
      succ.incoming = {id};
      succ.fresh = n.next;
      nodes.push_back(std::move(n));
      work.push_back(std::move(succ));
      continue;
    }
    int eta = *n.fresh.begin();
    n.fresh.erase(n.fresh.begin());
    if (n.old.count(eta)) {
      work.push_back(std::move(n));
      continue;
    }
    const auto& s = cl.subs[static_cast<size_t>(eta)];
    auto addFresh = [](GNode& m, int x) {
      if (!m.old.count(x)) m.fresh.insert(x);
    };
    switch (s.op) {
      case Op::True:
        n.old.insert(eta);
        work.push_back(std::move(n));
        break;
      case Op::False: break;
      case Op::Atom:
      case Op::Not: {
        uint64_t bit = uint64_t(1) << s.atom;
        if (s.op == Op::Atom) {
          if (n.neg & bit) break;
          n.pos |= bit;
        } else {
          if (n.pos & bit) break;
          n.neg |= bit;
        }
        n.old.insert(eta);
        work.push_back(std::move(n));
        break;
      }
      case Op::And:
        addFresh(n, s.a);
        addFresh(n, s.b);
        n.old.insert(eta);
        work.push_back(std::move(n));
        break;
      case Op::Or: {
        GNode n2 = n;
        addFresh(n, s.a);
        addFresh(n2, s.b);
        n.old.insert(eta);
        n2.old.insert(eta);
        work.push_back(std::move(n));
        work.push_back(std::move(n2));
        break;
      }
      case Op::Until: {
        GNode n2 = n;
        addFresh(n, s.a);
        n.next.insert(eta);
        addFresh(n2, s.b);
        n.old.insert(eta);
        n2.old.insert(eta);
        work.push_back(std::move(n));
        work.push_back(std::move(n2));
        break;
      }
      case Op::Release: {
        GNode n2 = n;
        addFresh(n, s.b);
        n.next.insert(eta);
        addFresh(n2, s.a);
        addFresh(n2, s.b);
        n.old.insert(eta);
        n2.old.insert(eta);
        work.push_back(std::move(n));
        work.push_back(std::move(n2));
        break;
      }
    }
  }

  std::vector<int> untils;
  for (size_t i = 0; i < cl.subs.size(); ++i)
    if (cl.subs[i].op == Op::Until) untils.push_back(static_cast<int>(i));
  const size_t N = nodes.size();
  const size_t K = std::max<size_t>(1, untils.size());
  // inF[c][n]: node n fulfils the c-th until obligation
  std::vector<std::vector<char>> inF(K, std::vector<char>(N, 1));
  for (size_t c = 0; c < untils.size(); ++c) {
    int u = untils[c];
    int nu = cl.subs[static_cast<size_t>(u)].b;
    for (size_t n = 0; n < N; ++n) inF[c][n] = !nodes[n].old.count(u) || nodes[n].old.count(nu);
  }
  std::vector<std::vector<int>> gsucc(N);
  std::vector<int> ginit;
  for (size_t n = 0; n < N; ++n)
    for (int p : nodes[n].incoming) {
      if (p == kInit) ginit.push_back(static_cast<int>(n));
      else gsucc[static_cast<size_t>(p)].push_back(static_cast<int>(n));
    }

  // counter degeneralization, keeping only reachable (node, counter) pairs
  BuchiAutomaton A;
  A.numAtoms = atoms.size();
  std::map<std::pair<int, int>, int> loc;
  std::deque<std::pair<int, int>> q;
  auto locOf = [&](int n, int c) {
    auto key = std::make_pair(n, c);
    if (auto it = loc.find(key); it != loc.end()) return it->second;
    int id = static_cast<int>(A.succ.size());
    loc.emplace(key, id);
    A.succ.emplace_back();
    A.pos.push_back(nodes[static_cast<size_t>(n)].pos);
    A.neg.push_back(nodes[static_cast<size_t>(n)].neg);
    A.accepting.push_back(c == 0 && inF[0][static_cast<size_t>(n)]);
    q.push_back(key);
    return id;
  };
  for (int n : ginit) A.initial.push_back(locOf(n, 0));
  while (!q.empty()) {
    auto [n, c] = q.front();
    q.pop_front();
    int from = loc[{n, c}];
    int c2 = inF[static_cast<size_t>(c)][static_cast<size_t>(n)] ? static_cast<int>((static_cast<size_t>(c) + 1) % K) : c;
    for (int m : gsucc[static_cast<size_t>(n)]) {
      int to = locOf(m, c2);
      A.succ[static_cast<size_t>(from)].push_back(to);
    }
  }
  return A;
}

std::vector<int> Trace::unrolled(size_t loops) const {
  std::vector<int> out = prefix;
  if (kind == Kind::Lasso)
    for (size_t i = 0; i < loops; ++i) out.insert(out.end(), cycle.begin(), cycle.end());
  return out;
}

namespace {

struct ProductSearch {
  const PlainStructure& p;
  const BuchiAutomaton& A;
  const std::vector<uint64_t>& labels;
  size_t L;
  std::vector<uint8_t> mark;  // bit 0: outer visited, bit 1: inner visited

  ProductSearch(const PlainStructure& ps, const BuchiAutomaton& a, const std::vector<uint64_t>& lab)
      : p(ps), A(a), labels(lab), L(std::max<size_t>(1, a.size())) {
    if (p.size() * L > 400000000ull) throw ResourceError("product of structure and automaton too large");
    mark.assign(p.size() * L, 0);
  }

  void successors(uint64_t x, std::vector<uint64_t>& out) const {
    out.clear();
    size_t s = x / L, l = x % L;
    const auto& ss = p.succ[s];
    auto visit = [&](size_t t) {
      for (int m : A.succ[l])
        if (A.admits(m, labels[t])) out.push_back(t * L + static_cast<size_t>(m));
    };
    if (ss.empty()) visit(s);
    for (int t : ss) visit(static_cast<size_t>(t));
  }

  bool accepting(uint64_t x) const { return A.accepting[x % L]; }

  struct Frame {
    uint64_t x;
    std::vector<uint64_t> succ;
    size_t next = 0;
  };

  // Inner search for a path back to the seed; returns the cycle seed..last.
  std::optional<std::vector<uint64_t>> inner(uint64_t seed) {
    std::vector<Frame> st;
    st.push_back({seed, {}, 0});
    successors(seed, st.back().succ);
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.next == f.succ.size()) {
        st.pop_back();
        continue;
      }
      uint64_t y = f.succ[f.next++];
      if (y == seed) {
        std::vector<uint64_t> cyc;
        for (auto& fr : st) cyc.push_back(fr.x);
        return cyc;
      }
      if (mark[y] & 2) continue;
      mark[y] |= 2;
      Frame g{y, {}, 0};
      successors(y, g.succ);
      st.push_back(std::move(g));
    }
    return std::nullopt;
  }

  // Shortest product path from any of `from` to `to` taking at least one step when
  // `to` is among the sources; returns the states before `to`.
  std::vector<uint64_t> shortest(const std::vector<uint64_t>& from, uint64_t to, bool cycle) {
    std::unordered_map<uint64_t, uint64_t> parent;
    std::deque<uint64_t> q;
    const uint64_t none = ~uint64_t(0);
    std::vector<uint64_t> buf;
    for (uint64_t r : from) {
      if (!cycle && r == to) return {};
      if (parent.emplace(r, none).second) q.push_back(r);
    }
    while (!q.empty()) {
      uint64_t x = q.front();
      q.pop_front();
      successors(x, buf);
      for (uint64_t y : buf) {
        if (y == to) {
          std::vector<uint64_t> out;
          for (uint64_t z = x; z != none; z = parent[z]) out.push_back(z);
          std::reverse(out.begin(), out.end());
          return out;
        }
        if (parent.emplace(y, x).second) q.push_back(y);
      }
    }
    return {};
  }

  std::optional<std::pair<std::vector<uint64_t>, std::vector<uint64_t>>> shortestLasso(
      const std::vector<uint64_t>& roots) {
    auto found = run(roots);
    if (!found) return found;
    uint64_t seed = found->second.front();
    return std::make_pair(shortest(roots, seed, false), shortest({seed}, seed, true));
  }

  std::optional<std::pair<std::vector<uint64_t>, std::vector<uint64_t>>> run(const std::vector<uint64_t>& roots) {
    for (uint64_t r : roots) {
      if (mark[r] & 1) continue;
      std::vector<Frame> st;
      mark[r] |= 1;
      st.push_back({r, {}, 0});
      successors(r, st.back().succ);
      while (!st.empty()) {
        Frame& f = st.back();
        if (f.next < f.succ.size()) {
          uint64_t y = f.succ[f.next++];
          if (mark[y] & 1) continue;
          mark[y] |= 1;
          Frame g{y, {}, 0};
          successors(y, g.succ);
          st.push_back(std::move(g));
          continue;
        }
        if (accepting(f.x)) {
          if (auto cyc = inner(f.x)) {
            std::vector<uint64_t> stem;
            for (size_t i = 0; i + 1 < st.size(); ++i) stem.push_back(st[i].x);
            return std::make_pair(stem, *cyc);
          }
        }
        st.pop_back();
      }
    }
    return std::nullopt;
  }
};

Trace toTrace(const PlainStructure& p, size_t L, const std::vector<uint64_t>& stem, const std::vector<uint64_t>& cyc) {
  Trace t;
  for (auto x : stem) t.prefix.push_back(static_cast<int>(x / L));
  for (auto x : cyc) t.cycle.push_back(static_cast<int>(x / L));
  auto dedupe = [](std::vector<int>& v) { v.erase(std::unique(v.begin(), v.end()), v.end()); };
  bool onlyCompletion = true;
  for (int s : t.cycle) onlyCompletion = onlyCompletion && s == t.cycle.front();
  onlyCompletion = onlyCompletion && p.succ[static_cast<size_t>(t.cycle.front())].empty();
  if (onlyCompletion) {
    t.kind = Trace::Kind::Finite;
    t.prefix.push_back(t.cycle.front());
    t.cycle.clear();
    dedupe(t.prefix);
    return t;
  }
  t.kind = Trace::Kind::Lasso;
  // fold the stem into the cycle where it already repeats the loop
  while (!t.prefix.empty() && t.prefix.back() == t.cycle.back()) {
    std::rotate(t.cycle.rbegin(), t.cycle.rbegin() + 1, t.cycle.rend());
    t.prefix.pop_back();
  }
  for (size_t d = 1; d < t.cycle.size(); ++d) {
    if (t.cycle.size() % d) continue;
    bool periodic = true;
    for (size_t i = d; i < t.cycle.size() && periodic; ++i) periodic = t.cycle[i] == t.cycle[i - d];
    if (periodic) {
      t.cycle.resize(d);
      break;
    }
  }
  return t;
}

}  // namespace

Verdict model_check(const PlainStructure& p, const FormulaPtr& f) {
  Standardized st = standardize(fNot(f));
  BuchiAutomaton A = ltl_to_buchi(st.formula, st.atoms);
  KripkeLabeling lab = label(p, st.atoms);
  ProductSearch ps(p, A, lab.labels);
  std::vector<uint64_t> roots;
  size_t s0 = static_cast<size_t>(p.initial);
  for (int l : A.initial)
    if (A.admits(l, lab.labels[s0])) roots.push_back(s0 * ps.L + static_cast<size_t>(l));
  auto found = ps.shortestLasso(roots);
  Verdict v;
  if (!found) return v;
  v.holds = false;
  v.trace = toTrace(p, ps.L, found->first, found->second);
  return v;
}

Verdict model_check(const System& s, const FormulaPtr& f, size_t bound) {
  return model_check(split_compound(s, bound), f);
}

bool exists_extension_satisfying(const PlainStructure& p, const std::vector<int>& prefix, const FormulaPtr& f) {
  if (prefix.empty() || prefix.front() != p.initial) throw InputError("prefix must start at the initial state");
  for (size_t i = 0; i + 1 < prefix.size(); ++i) {
    const auto& ss = p.succ[static_cast<size_t>(prefix[i])];
    if (std::find(ss.begin(), ss.end(), prefix[i + 1]) == ss.end())
      throw InputError("prefix is not a path: no edge " + std::to_string(prefix[i]) + " -> " + std::to_string(prefix[i + 1]));
  }
  Standardized st = standardize(f);
  BuchiAutomaton A = ltl_to_buchi(st.formula, st.atoms);
  KripkeLabeling lab = label(p, st.atoms);
  std::set<int> cur;
  for (int l : A.initial)
    if (A.admits(l, lab.labels[static_cast<size_t>(prefix[0])])) cur.insert(l);
  for (size_t i = 1; i < prefix.size() && !cur.empty(); ++i) {
    std::set<int> nxt;
    for (int l : cur)
      for (int m : A.succ[static_cast<size_t>(l)])
        if (A.admits(m, lab.labels[static_cast<size_t>(prefix[i])])) nxt.insert(m);
    cur = std::move(nxt);
  }
  if (cur.empty()) return false;
  ProductSearch ps(p, A, lab.labels);
  std::vector<uint64_t> roots;
  for (int l : cur) roots.push_back(static_cast<size_t>(prefix.back()) * ps.L + static_cast<size_t>(l));
  return ps.run(roots).has_value();
}

Validity check_validity(const FormulaPtr& f) {
  Standardized st = standardize(fNot(f));
  BuchiAutomaton A = ltl_to_buchi(st.formula, st.atoms);
  Validity v;
  v.atoms = st.atoms;
  // BFS tree from the initial locations
  const size_t n = A.size();
  std::vector<int> parent(n, -2);
  std::deque<int> q;
  for (int l : A.initial)
    if (parent[static_cast<size_t>(l)] == -2) {
      parent[static_cast<size_t>(l)] = -1;
      q.push_back(l);
    }
  std::vector<int> order;
  while (!q.empty()) {
    int l = q.front();
    q.pop_front();
    order.push_back(l);
    for (int m : A.succ[static_cast<size_t>(l)])
      if (parent[static_cast<size_t>(m)] == -2) {
        parent[static_cast<size_t>(m)] = l;
        q.push_back(m);
      }
  }
  for (int a : order) {
    if (!A.accepting[static_cast<size_t>(a)]) continue;
    std::vector<int> back(n, -2);
    std::deque<int> bq;
    for (int m : A.succ[static_cast<size_t>(a)])
      if (back[static_cast<size_t>(m)] == -2) {
        back[static_cast<size_t>(m)] = a;
        bq.push_back(m);
      }
    bool closed = back[static_cast<size_t>(a)] != -2;
    while (!bq.empty() && !closed) {
      int l = bq.front();
      bq.pop_front();
      for (int m : A.succ[static_cast<size_t>(l)])
        if (back[static_cast<size_t>(m)] == -2) {
          back[static_cast<size_t>(m)] = l;
          if (m == a) closed = true;
          bq.push_back(m);
        }
    }
    if (!closed) continue;
    v.valid = false;
    std::vector<int> stem;
    for (int l = parent[static_cast<size_t>(a)]; l != -1; l = parent[static_cast<size_t>(l)]) stem.push_back(l);
    std::reverse(stem.begin(), stem.end());
    std::vector<int> cyc;
    for (int l = back[static_cast<size_t>(a)]; l != a; l = back[static_cast<size_t>(l)]) cyc.push_back(l);
    cyc.push_back(a);
    std::reverse(cyc.begin(), cyc.end());
    for (int l : stem) v.prefix.push_back(A.pos[static_cast<size_t>(l)]);
    for (int l : cyc) v.cycle.push_back(A.pos[static_cast<size_t>(l)]);
    return v;
  }
  return v;
}

}  // namespace sv
