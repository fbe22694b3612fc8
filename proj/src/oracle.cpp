#include "syncverif/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

namespace sv {

bool for_each_maximal_path(const PlainStructure& p, size_t prefixBound, size_t maxVisits,
                           const std::function<bool(const MaxPath&)>& visit) {
  if (prefixBound < 1) throw InputError("prefix bound must be at least 1");
  std::vector<int> path{p.initial};
  std::vector<size_t> visits(p.size(), 0);
  visits[static_cast<size_t>(p.initial)] = 1;
  std::vector<size_t> mark(p.size(), 0);
  size_t stamp = 0;
  size_t work = 0;
  MaxPath m;
  std::function<bool()> dfs = [&]() -> bool {
    if (++work > kOracleMaxPaths) throw ResourceError("path enumeration exceeds the explosion guard");
    int s = path.back();
    const auto& ss = p.succ[static_cast<size_t>(s)];
    if (ss.empty()) {
      m.kind = Trace::Kind::Finite;
      m.prefix = path;
      m.cycle.clear();
      return visit(m);
    }
    for (int t : ss) {
      auto last = std::find(path.rbegin(), path.rend(), t);
      if (last != path.rend()) {
        size_t i = static_cast<size_t>(path.rend() - last) - 1;
        bool simple = true;
        ++stamp;
        for (size_t k = i; k < path.size() && simple; ++k) {
          size_t q = static_cast<size_t>(path[k]);
          simple = mark[q] != stamp;
          mark[q] = stamp;
        }
        bool foldFree = i == 0 || path[i - 1] != path.back();
        if (simple && foldFree) {
          m.kind = Trace::Kind::Lasso;
          m.prefix.assign(path.begin(), path.begin() + static_cast<long>(i));
          m.cycle.assign(path.begin() + static_cast<long>(i), path.end());
          if (!visit(m)) return false;
        }
      }
      if (path.size() < prefixBound && (maxVisits == 0 || visits[static_cast<size_t>(t)] < maxVisits)) {
        path.push_back(t);
        ++visits[static_cast<size_t>(t)];
        bool go = dfs();
        --visits[static_cast<size_t>(t)];
        path.pop_back();
        if (!go) return false;
      }
    }
    return true;
  };
  return dfs();
}

std::vector<MaxPath> enumerate_maximal_paths(const PlainStructure& p, size_t prefixBound, size_t maxVisits) {
  std::vector<MaxPath> out;
  for_each_maximal_path(p, prefixBound, maxVisits, [&](const MaxPath& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

namespace {

std::vector<std::vector<int>> finitePaths(const std::vector<std::vector<int>>& succ, int initial, size_t maxLen) {
  std::vector<std::vector<int>> out;
  if (maxLen == 0) return out;
  std::vector<int> path{initial};
  std::function<void()> dfs = [&]() {
    out.push_back(path);
    if (out.size() > kOracleMaxPaths) throw ResourceError("path enumeration exceeds the explosion guard");
    if (path.size() == maxLen) return;
    for (int t : succ[static_cast<size_t>(path.back())]) {
      path.push_back(t);
      dfs();
      path.pop_back();
    }
  };
  dfs();
  return out;
}

}  // namespace

std::vector<std::vector<int>> enumerate_finite_paths(const PlainStructure& p, size_t maxLen) {
  return finitePaths(p.succ, p.initial, maxLen);
}
std::vector<std::vector<int>> enumerate_finite_paths(const AtomicStructure& a, size_t maxLen) {
  return finitePaths(a.succ, a.initial, maxLen);
}

CriteriaTable::CriteriaTable(const std::vector<const AtomicStructure*>& comps,
                             const std::vector<SyncCriterion>& criteria) {
  auto side = [&](const QualifiedProp& q) {
    for (size_t n = 0; n < comps.size(); ++n)
      if (comps[n]->name == q.component) {
        Side s{static_cast<int>(n), {}};
        for (size_t g = 0; g < comps[n]->size(); ++g) s.values.push_back(eval_property(*comps[n], static_cast<int>(g), q));
        return s;
      }
    throw InputError("criterion refers to unknown component " + q.component);
  };
  for (const auto& c : criteria) rows.emplace_back(side(c.left), side(c.right));
}

bool CriteriaTable::compatible(const std::vector<int>& stages) const {
  for (const auto& [l, r] : rows)
    if (l.values[static_cast<size_t>(stages[static_cast<size_t>(l.comp)])] !=
        r.values[static_cast<size_t>(stages[static_cast<size_t>(r.comp)])])
      return false;
  return true;
}

std::optional<IndexRelation> find_index_relation(const std::vector<const AtomicStructure*>& comps,
                                                 const std::vector<std::vector<int>>& paths,
                                                 const std::vector<SyncCriterion>& criteria, size_t searchBound) {
  const size_t N = paths.size();
  if (N != comps.size()) throw InputError("one path per component expected");
  if (N > 20) throw ResourceError("too many components for index-relation search");
  for (const auto& pth : paths)
    if (pth.empty()) throw InputError("component paths must be nonempty");
  CriteriaTable table(comps, criteria);
  auto stagesAt = [&](const std::vector<int>& idx) {
    std::vector<int> st(N);
    for (size_t n = 0; n < N; ++n) st[n] = paths[n][static_cast<size_t>(idx[n])];
    return st;
  };
  std::vector<int> idx(N, 0);
  if (!table.compatible(stagesAt(idx))) return std::nullopt;
  std::set<std::vector<int>> dead;
  std::vector<std::vector<int>> chain{idx};
  size_t work = 0;
  std::function<bool()> dfs = [&]() -> bool {
    if (++work > searchBound) throw ResourceError("index-relation search bound exceeded");
    const std::vector<int> cur = chain.back();
    bool done = true;
    for (size_t n = 0; n < N; ++n) done = done && static_cast<size_t>(cur[n]) + 1 == paths[n].size();
    if (done) return true;
    for (uint32_t m = 1; m < (1u << N); ++m) {
      std::vector<int> nxt = cur;
      bool ok = true;
      for (size_t n = 0; n < N && ok; ++n)
        if (m & (1u << n)) {
          if (static_cast<size_t>(nxt[n]) + 1 >= paths[n].size()) ok = false;
          else ++nxt[n];
        }
      if (!ok || dead.count(nxt) || !table.compatible(stagesAt(nxt))) continue;
      chain.push_back(nxt);
      if (dfs()) return true;
      chain.pop_back();
      dead.insert(nxt);
    }
    return false;
  };
  if (!dfs()) return std::nullopt;
  return IndexRelation{chain};
}

std::vector<std::string> validate_index_relation(const std::vector<const AtomicStructure*>& comps,
                                                 const std::vector<std::vector<int>>& paths,
                                                 const std::vector<SyncCriterion>& criteria,
                                                 const IndexRelation& rel) {
  std::vector<std::string> errs;
  const size_t N = paths.size();
  CriteriaTable table(comps, criteria);
  if (rel.tuples.empty() || rel.tuples.front() != std::vector<int>(N, 0)) errs.push_back("does not start at the zero tuple");
  for (size_t i = 0; i < rel.tuples.size(); ++i) {
    const auto& t = rel.tuples[i];
    if (t.size() != N) {
      errs.push_back("tuple " + std::to_string(i) + " has the wrong width");
      return errs;
    }
    std::vector<int> st(N);
    for (size_t n = 0; n < N; ++n) {
      if (t[n] < 0 || static_cast<size_t>(t[n]) >= paths[n].size()) {
        errs.push_back("tuple " + std::to_string(i) + " index out of range");
        return errs;
      }
      st[n] = paths[n][static_cast<size_t>(t[n])];
    }
    if (!table.compatible(st)) errs.push_back("tuple " + std::to_string(i) + " is not compatible");
    if (i == 0) continue;
    const auto& prev = rel.tuples[i - 1];
    bool moved = false, bad = false;
    for (size_t n = 0; n < N; ++n) {
      int d = t[n] - prev[n];
      if (d == 1) moved = true;
      else if (d != 0) bad = true;
    }
    if (bad || !moved) errs.push_back("step " + std::to_string(i) + " does not advance a nonempty set by one");
  }
  if (!rel.tuples.empty())
    for (size_t n = 0; n < N; ++n)
      if (static_cast<size_t>(rel.tuples.back()[n]) + 1 != paths[n].size())
        errs.push_back("indices of component " + std::to_string(n) + " are not all covered");
  return errs;
}

namespace {

bool evalWord(const std::vector<std::function<bool(size_t)>>& atomAt, const std::unordered_map<std::string, size_t>& atomIdx,
              size_t n, long loopStart, const FormulaPtr& f) {
  std::unordered_map<const Formula*, std::vector<char>> memo;
  auto next = [&](size_t i) -> long {
    if (i + 1 < n) return static_cast<long>(i + 1);
    return loopStart;  // -1 for finite words
  };
  std::function<const std::vector<char>&(const Formula&)> ev = [&](const Formula& g) -> const std::vector<char>& {
    if (auto it = memo.find(&g); it != memo.end()) return it->second;
    std::vector<char> v(n, 0);
    using Op = Formula::Op;
    switch (g.op) {
      case Op::True: std::fill(v.begin(), v.end(), 1); break;
      case Op::False: break;
      case Op::Atom: {
        size_t k = atomIdx.at(g.atom->key);
        for (size_t i = 0; i < n; ++i) v[i] = atomAt[k](i);
        break;
      }
      case Op::Not: {
        const auto& a = ev(*g.a);
        for (size_t i = 0; i < n; ++i) v[i] = !a[i];
        break;
      }
      case Op::And:
      case Op::Or: {
        std::vector<char> a = ev(*g.a);
        const auto& b = ev(*g.b);
        for (size_t i = 0; i < n; ++i) v[i] = g.op == Op::And ? (a[i] && b[i]) : (a[i] || b[i]);
        break;
      }
      case Op::Until:
      case Op::Release: {
        std::vector<char> a = ev(*g.a);
        const auto& b = ev(*g.b);
        bool until = g.op == Op::Until;
        std::fill(v.begin(), v.end(), until ? 0 : 1);
        for (bool changed = true; changed;) {
          changed = false;
          for (size_t i = n; i-- > 0;) {
            long j = next(i);
            char nv;
            if (j < 0) nv = b[i];
            else if (until) nv = b[i] || (a[i] && v[static_cast<size_t>(j)]);
            else nv = b[i] && (a[i] || v[static_cast<size_t>(j)]);
            if (nv != v[i]) {
              v[i] = nv;
              changed = true;
            }
          }
        }
        break;
      }
    }
    return memo.emplace(&g, std::move(v)).first->second;
  };
  return n > 0 && ev(*f)[0];
}

}  // namespace

bool path_satisfies(const PlainStructure& p, const MaxPath& path, const FormulaPtr& f) {
  std::vector<int> pos = path.prefix;
  if (path.kind == Trace::Kind::Lasso) {
    if (path.cycle.empty()) throw InputError("lasso with an empty cycle");
    pos.insert(pos.end(), path.cycle.begin(), path.cycle.end());
  }
  std::vector<AtomRef> atoms = formulaAtoms(*f);
  std::unordered_map<std::string, size_t> atomIdx;
  std::vector<std::function<bool(size_t)>> atomAt;
  std::map<std::pair<size_t, int>, bool> cache;
  for (size_t k = 0; k < atoms.size(); ++k) {
    atomIdx.emplace(atoms[k]->key, k);
    atomAt.push_back([&, k](size_t i) {
      auto key = std::make_pair(k, pos[i]);
      if (auto it = cache.find(key); it != cache.end()) return it->second;
      bool b = eval_atom(p, pos[i], *atoms[k]);
      cache.emplace(key, b);
      return b;
    });
  }
  long loop = path.kind == Trace::Kind::Lasso ? static_cast<long>(path.prefix.size()) : -1;
  return evalWord(atomAt, atomIdx, pos.size(), loop, f);
}

bool word_satisfies(const std::vector<AtomRef>& atoms, const std::vector<uint64_t>& prefix,
                    const std::vector<uint64_t>& cycle, const FormulaPtr& f) {
  std::vector<uint64_t> w = prefix;
  w.insert(w.end(), cycle.begin(), cycle.end());
  std::unordered_map<std::string, size_t> atomIdx;
  std::vector<std::function<bool(size_t)>> atomAt;
  for (size_t k = 0; k < atoms.size(); ++k) {
    atomIdx.emplace(atoms[k]->key, k);
    atomAt.push_back([&w, k](size_t i) { return ((w[i] >> k) & 1) != 0; });
  }
  long loop = cycle.empty() ? -1 : static_cast<long>(prefix.size());
  return evalWord(atomAt, atomIdx, w.size(), loop, f);
}

namespace {

std::vector<int> destutter(std::vector<int> v) {
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::map<std::vector<int>, int> provIndex(const PlainStructure& p) {
  std::map<std::vector<int>, int> m;
  for (size_t s = 0; s < p.size(); ++s) m.emplace(p.prov[s], static_cast<int>(s));
  return m;
}

bool hasEdge(const PlainStructure& p, int a, int b) {
  const auto& ss = p.succ[static_cast<size_t>(a)];
  return std::find(ss.begin(), ss.end(), b) != ss.end();
}

}  // namespace

Prop5Report check_prop5(const PlainStructure& split, size_t bound) {
  if (split.componentStructs.empty()) throw InputError("bijection check needs component structures");
  std::vector<const AtomicStructure*> comps;
  for (const auto& c : split.componentStructs) comps.push_back(c.get());
  const size_t N = comps.size();
  auto byProv = provIndex(split);
  Prop5Report rep;

  // lift a relation over component paths to split states, checking adjacency
  auto lift = [&](const std::vector<std::vector<int>>& paths, const IndexRelation& rel,
                  std::vector<int>& out) -> std::string {
    out.clear();
    for (const auto& t : rel.tuples) {
      std::vector<int> st(N);
      for (size_t n = 0; n < N; ++n) st[n] = paths[n][static_cast<size_t>(t[n])];
      auto it = byProv.find(st);
      if (it == byProv.end()) return "compatible stages missing from the split";
      if (!out.empty() && !hasEdge(split, out.back(), it->second)) return "split lacks an edge required by the relation";
      out.push_back(it->second);
    }
    return "";
  };

  std::set<std::vector<std::vector<int>>> fromSplit, fromTuples;
  for (const auto& path : enumerate_finite_paths(split, bound)) {
    ++rep.splitPaths;
    std::vector<std::vector<int>> comp(N);
    for (size_t n = 0; n < N; ++n) {
      std::vector<int> col;
      for (int s : path) col.push_back(split.prov[static_cast<size_t>(s)][n]);
      comp[n] = destutter(col);
    }
    IndexRelation rel;
    for (int s : path) {
      std::vector<int> t(N);
      for (size_t n = 0; n < N; ++n) {
        // index of this stage occurrence within the de-stuttered column
        t[n] = rel.tuples.empty() ? 0 : rel.tuples.back()[n] + (split.prov[static_cast<size_t>(s)][n] != comp[n][static_cast<size_t>(rel.tuples.back()[n])]);
      }
      rel.tuples.push_back(t);
    }
    auto errs = validate_index_relation(comps, comp, split.criteria, rel);
    if (!errs.empty()) {
      rep.mismatches.push_back("split path of length " + std::to_string(path.size()) + ": " + errs.front());
      continue;
    }
    std::vector<int> back;
    std::string e = lift(comp, rel, back);
    if (!e.empty() || back != path) rep.mismatches.push_back("split path does not round-trip: " + (e.empty() ? "different path" : e));
    // joint steps make some projections longer in total than the split path;
    // only those within the tuple-side budget are compared
    size_t steps = 0;
    for (const auto& c : comp) steps += c.size() - 1;
    if (steps + 1 <= bound) fromSplit.insert(comp);
  }

  // per-component paths with total step count below the bound
  std::vector<std::vector<std::vector<int>>> local(N);
  for (size_t n = 0; n < N; ++n) local[n] = enumerate_finite_paths(*comps[n], bound);
  std::vector<std::vector<int>> pick(N);
  std::function<void(size_t, size_t)> combine = [&](size_t n, size_t steps) {
    if (n == N) {
      auto rel = find_index_relation(comps, pick, split.criteria);
      if (!rel) return;
      auto errs = validate_index_relation(comps, pick, split.criteria, *rel);
      if (!errs.empty()) rep.mismatches.push_back("relation failed its audit: " + errs.front());
      std::vector<int> lifted;
      std::string e = lift(pick, *rel, lifted);
      if (!e.empty()) rep.mismatches.push_back("compatible tuple without split path: " + e);
      fromTuples.insert(pick);
      return;
    }
    for (const auto& pth : local[n]) {
      size_t s = steps + pth.size() - 1;
      if (s + 1 > bound) continue;
      pick[n] = pth;
      combine(n + 1, s);
    }
  };
  combine(0, 0);
  rep.compatibleTuples = fromTuples.size();
  for (const auto& t : fromSplit)
    if (!fromTuples.count(t)) rep.mismatches.push_back("split projection not found among compatible tuples");
  for (const auto& t : fromTuples)
    if (!fromSplit.count(t)) rep.mismatches.push_back("compatible tuple not realized by any split path");
  return rep;
}

Prop5Report check_prop5(const System& s, size_t bound) { return check_prop5(split_compound(s), bound); }

bool ag_oracle_fixed_env(const PlainStructure& subject, const PlainStructure& env, const std::vector<SyncCriterion>& y,
                         const FormulaPtr& alpha, const FormulaPtr& gamma, size_t bound) {
  PlainStructure both = compose_plain({subject, env}, y);
  const size_t k = subject.components.size();
  auto byProv = provIndex(subject);
  std::set<std::vector<int>> allowed;
  for (const auto& path : enumerate_finite_paths(both, bound)) {
    std::vector<int> proj;
    for (int s : path) {
      const auto& pv = both.prov[static_cast<size_t>(s)];
      proj.push_back(byProv.at(std::vector<int>(pv.begin(), pv.begin() + static_cast<long>(k))));
    }
    allowed.insert(destutter(proj));
  }
  std::vector<MaxPath> maximal = enumerate_maximal_paths(subject, bound + subject.size());
  for (const auto& g : allowed) {
    if (!exists_extension_satisfying(subject, g, alpha)) continue;
    if (subject.succ[static_cast<size_t>(g.back())].empty()) {
      MaxPath fin;
      fin.prefix = g;
      if (!path_satisfies(subject, fin, gamma)) return false;
      continue;
    }
    for (const auto& m : maximal) {
      std::vector<int> unrolled = m.prefix;
      if (m.kind == Trace::Kind::Lasso)
        while (unrolled.size() <= g.size()) unrolled.insert(unrolled.end(), m.cycle.begin(), m.cycle.end());
      if (unrolled.size() <= g.size() || !std::equal(g.begin(), g.end(), unrolled.begin())) continue;
      if (!path_satisfies(subject, m, alpha)) continue;
      if (path_satisfies(subject, m, gamma)) continue;
      // some longer prefix compatible with gamma; compatibility is prefix-closed
      std::vector<int> ext(unrolled.begin(), unrolled.begin() + static_cast<long>(g.size() + 1));
      if (!exists_extension_satisfying(subject, ext, gamma)) return false;
    }
  }
  return true;
}

Prop6Result check_prop6(const std::vector<const AtomicStructure*>& comps, size_t split,
                        const std::vector<SyncCriterion>& criteria, const std::vector<int>& stages,
                        const std::vector<int>& next) {
  const size_t N = comps.size();
  if (stages.size() != N || next.size() != N || split > N) throw InputError("stage tuples must cover every component");
  std::map<std::string, size_t> compIdx;
  for (size_t n = 0; n < N; ++n) compIdx[comps[n]->name] = n;
  auto group = [&](const std::string& c) { return compIdx.at(c) < split ? 0 : 1; };
  std::vector<SyncCriterion> y1, y2, y3;
  for (const auto& c : criteria) {
    int gl = group(c.left.component), gr = group(c.right.component);
    (gl != gr ? y3 : gl == 0 ? y1 : y2).push_back(c);
  }
  Prop6Result r;
  CriteriaTable all(comps, criteria);
  if (!all.compatible(stages)) return r;
  for (size_t n = 0; n < N; ++n) {
    const auto& ss = comps[n]->succ[static_cast<size_t>(stages[n])];
    if (next[n] != stages[n] && std::find(ss.begin(), ss.end(), next[n]) == ss.end()) return r;
  }
  if (!CriteriaTable(comps, y1).compatible(next) || !CriteriaTable(comps, y2).compatible(next)) return r;
  for (const auto& c : y3)
    for (const QualifiedProp* q : {&c.left, &c.right}) {
      size_t m = compIdx.at(q->component);
      if (eval_property(*comps[m], stages[m], *q) != eval_property(*comps[m], next[m], *q)) return r;
    }
  r.applicable = true;
  r.holds = all.compatible(next);
  return r;
}

}  // namespace sv
