#include "syncverif/build.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <unordered_map>

namespace sv {

size_t defaultBound() {
  if (const char* env = std::getenv("SYNCVERIF_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
  }
  return kDefaultMaxStates;
}

size_t PlainStructure::numEdges() const {
  size_t n = 0;
  for (auto& s : succ) n += s.size();
  return n;
}

int PlainStructure::findProp(const std::string& key) const {
  for (size_t i = 0; i < propKeys.size(); ++i)
    if (propKeys[i].key() == key) return static_cast<int>(i);
  return -1;
}

std::string PlainStructure::stageName(int c, int g) const {
  if (!componentStructs.empty()) return componentStructs[static_cast<size_t>(c)]->describe(g);
  return stageNames[static_cast<size_t>(c)][static_cast<size_t>(g)];
}

int PlainStructure::componentIndex(const std::string& name) const {
  for (size_t i = 0; i < components.size(); ++i)
    if (components[i] == name) return static_cast<int>(i);
  return -1;
}

bool PlainStructure::locallyExtendable(int c, int g) const {
  if (componentStructs.empty())
    throw InputError("component structures are not available for local analysis");
  return !componentStructs[static_cast<size_t>(c)]->succ[static_cast<size_t>(g)].empty();
}

std::vector<std::vector<int>> PlainStructure::predecessors() const {
  std::vector<std::vector<int>> pred(size());
  for (size_t s = 0; s < size(); ++s)
    for (int t : succ[s]) pred[static_cast<size_t>(t)].push_back(static_cast<int>(s));
  return pred;
}

namespace {

struct Interner {
  std::vector<Value> values;
  uint32_t add(const Value& v) {
    for (size_t i = 0; i < values.size(); ++i)
      if (values[i] == v) return static_cast<uint32_t>(i);
    values.push_back(v);
    return static_cast<uint32_t>(values.size() - 1);
  }
};

struct VecHash {
  size_t operator()(const std::vector<int>& v) const {
    size_t h = v.size();
    for (int x : v) h = h * 0x9e3779b97f4a7c15ull ^ static_cast<size_t>(x);
    return h;
  }
};

}  // namespace

PlainStructure split_atomic(const AtomicRef& s) {
  PlainStructure p;
  const size_t n = s->size();
  // canonical order: breadth-first from the initial stage, unreachable stages last
  std::vector<int> order, pos(n, -1);
  std::deque<int> q{s->initial};
  pos[static_cast<size_t>(s->initial)] = 0;
  order.push_back(s->initial);
  while (!q.empty()) {
    int g = q.front();
    q.pop_front();
    for (int h : s->succ[static_cast<size_t>(g)])
      if (pos[static_cast<size_t>(h)] < 0) {
        pos[static_cast<size_t>(h)] = static_cast<int>(order.size());
        order.push_back(h);
        q.push_back(h);
      }
  }
  for (size_t g = 0; g < n; ++g)
    if (pos[g] < 0) {
      pos[g] = static_cast<int>(order.size());
      order.push_back(static_cast<int>(g));
    }

  p.succ.resize(n);
  for (size_t i = 0; i < n; ++i) {
    for (int h : s->succ[static_cast<size_t>(order[i])]) p.succ[i].push_back(pos[static_cast<size_t>(h)]);
    p.prov.push_back({order[i]});
  }
  p.initial = 0;
  p.components = {s->name};
  p.componentStructs = {s};

  for (auto& def : s->props) {
    std::vector<std::vector<Value>> paramSets{{}};
    for (auto& t : def.params) {
      std::vector<std::vector<Value>> next;
      for (auto& prefix : paramSets)
        for (auto& v : domain(t)) {
          auto x = prefix;
          x.push_back(v);
          next.push_back(std::move(x));
        }
      paramSets = std::move(next);
      if (paramSets.size() > 4096)
        throw ResourceError("property " + def.name + " has too many parameter instances");
    }
    for (auto& params : paramSets) {
      p.propKeys.push_back(QualifiedProp{s->name, def.name, params});
      p.propTypes.push_back(def.codomain);
    }
  }
  const size_t np = p.propKeys.size();
  p.propDomain.resize(np);
  p.propTable.assign(n * np, 0);
  std::vector<Interner> interners(np);
  size_t pi = 0;
  for (auto& def : s->props) {
    size_t count = 0;
    for (size_t k = pi; k < np && p.propKeys[k].name == def.name; ++k) ++count;
    for (size_t k = pi; k < pi + count; ++k)
      for (size_t i = 0; i < n; ++i) {
        Value v = def.eval(s->stages[static_cast<size_t>(order[i])], p.propKeys[k].params);
        if (def.codomain->kind != ValueType::Kind::Tuple) v.type = def.codomain;
        p.propTable[i * np + k] = interners[k].add(v);
      }
    pi += count;
  }
  for (size_t k = 0; k < np; ++k) p.propDomain[k] = std::move(interners[k].values);
  return p;
}

PlainStructure split_atomic(const AtomicStructure& s) {
  return split_atomic(std::make_shared<AtomicStructure>(s));
}

PlainStructure compose_plain(const std::vector<PlainStructure>& comps,
                             const std::vector<SyncCriterion>& crit, size_t bound) {
  const size_t N = comps.size();
  if (N == 0) throw InputError("composition of zero components");

  struct Side {
    size_t comp;
    int prop;
  };
  struct Crit {
    Side l, r;
    std::vector<int> match;  // left domain index -> right domain index, -1 if no equal value
    size_t last;             // highest component index involved
  };
  auto resolve = [&](const QualifiedProp& qp, const SyncCriterion& c) {
    std::string k = qp.key();
    for (size_t i = 0; i < N; ++i) {
      int p = comps[i].findProp(k);
      if (p >= 0) return Side{i, p};
    }
    throw InputError("criterion " + c.str() + ": unknown property " + k);
  };
  std::vector<Crit> cs;
  for (auto& c : crit) {
    Crit x{resolve(c.left, c), resolve(c.right, c), {}, 0};
    const auto& lt = comps[x.l.comp].propTypes[static_cast<size_t>(x.l.prop)];
    const auto& rt = comps[x.r.comp].propTypes[static_cast<size_t>(x.r.prop)];
    if (!comparable(*lt, *rt))
      throw InputError("criterion " + c.str() + ": type mismatch " + lt->str() + " vs " + rt->str());
    const auto& ld = comps[x.l.comp].propDomain[static_cast<size_t>(x.l.prop)];
    const auto& rd = comps[x.r.comp].propDomain[static_cast<size_t>(x.r.prop)];
    for (auto& v : ld) {
      int m = -1;
      for (size_t j = 0; j < rd.size(); ++j)
        if (rd[j] == v) m = static_cast<int>(j);
      x.match.push_back(m);
    }
    x.last = std::max(x.l.comp, x.r.comp);
    cs.push_back(std::move(x));
  }
  auto valIdx = [&](const Side& s, int state) {
    const auto& c = comps[s.comp];
    return static_cast<int>(c.propTable[static_cast<size_t>(state) * c.propKeys.size() + static_cast<size_t>(s.prop)]);
  };
  auto holds = [&](const Crit& c, const std::vector<int>& t) {
    return c.match[static_cast<size_t>(valIdx(c.l, t[c.l.comp]))] == valIdx(c.r, t[c.r.comp]);
  };

  PlainStructure out;
  std::vector<int> init(N);
  for (size_t i = 0; i < N; ++i) init[i] = comps[i].initial;
  for (size_t k = 0; k < cs.size(); ++k)
    if (!holds(cs[k], init))
      throw InputError("composition error: initial stages violate criterion " + crit[k].str());

  std::unordered_map<std::vector<int>, int, VecHash> ids;
  std::vector<std::vector<int>> tuples;
  auto intern = [&](const std::vector<int>& t) {
    auto it = ids.find(t);
    if (it != ids.end()) return it->second;
    if (tuples.size() >= bound)
      throw ResourceError("state bound " + std::to_string(bound) + " exceeded during composition");
    int id = static_cast<int>(tuples.size());
    ids.emplace(t, id);
    tuples.push_back(t);
    out.succ.emplace_back();
    return id;
  };
  intern(init);

  std::vector<std::vector<size_t>> critsEndingAt(N);
  for (size_t k = 0; k < cs.size(); ++k) critsEndingAt[cs[k].last].push_back(k);

  std::vector<int> cur(N);
  for (size_t head = 0; head < tuples.size(); ++head) {
    const std::vector<int> from = tuples[head];
    std::vector<int> found;
    // choose stay-or-step per component, pruning as soon as a criterion is decided
    std::function<void(size_t, bool)> rec = [&](size_t i, bool stepped) {
      if (i == N) {
        if (stepped) found.push_back(intern(cur));
        return;
      }
      auto tryStage = [&](int g, bool st) {
        cur[i] = g;
        for (size_t k : critsEndingAt[i])
          if (!holds(cs[k], cur)) return;
        rec(i + 1, stepped || st);
      };
      tryStage(from[i], false);
      for (int g : comps[i].succ[static_cast<size_t>(from[i])]) tryStage(g, true);
    };
    rec(0, false);
    out.succ[head] = std::move(found);
  }

  out.initial = 0;
  for (auto& c : comps) {
    out.components.insert(out.components.end(), c.components.begin(), c.components.end());
    out.componentStructs.insert(out.componentStructs.end(), c.componentStructs.begin(), c.componentStructs.end());
    out.stageNames.insert(out.stageNames.end(), c.stageNames.begin(), c.stageNames.end());
    out.criteria.insert(out.criteria.end(), c.criteria.begin(), c.criteria.end());
    out.propKeys.insert(out.propKeys.end(), c.propKeys.begin(), c.propKeys.end());
    out.propTypes.insert(out.propTypes.end(), c.propTypes.begin(), c.propTypes.end());
    out.propDomain.insert(out.propDomain.end(), c.propDomain.begin(), c.propDomain.end());
  }
  // keep structures only when every component has them
  bool allStructs = true;
  for (auto& c : comps) allStructs = allStructs && !c.componentStructs.empty();
  if (!allStructs) {
    out.componentStructs.clear();
    out.stageNames.clear();
    for (auto& c : comps) {
      if (!c.stageNames.empty()) {
        out.stageNames.insert(out.stageNames.end(), c.stageNames.begin(), c.stageNames.end());
        continue;
      }
      for (size_t a = 0; a < c.componentStructs.size(); ++a) {
        std::vector<std::string> names;
        for (size_t g = 0; g < c.componentStructs[a]->size(); ++g)
          names.push_back(c.componentStructs[a]->describe(static_cast<int>(g)));
        out.stageNames.push_back(std::move(names));
      }
    }
  }
  out.criteria.insert(out.criteria.end(), crit.begin(), crit.end());

  const size_t np = out.propKeys.size();
  out.propTable.resize(tuples.size() * np);
  out.prov.resize(tuples.size());
  for (size_t s = 0; s < tuples.size(); ++s) {
    size_t col = 0;
    for (size_t i = 0; i < N; ++i) {
      const auto& c = comps[i];
      const size_t cp = c.propKeys.size();
      const size_t q = static_cast<size_t>(tuples[s][i]);
      std::copy_n(c.propTable.begin() + static_cast<std::ptrdiff_t>(q * cp), cp,
                  out.propTable.begin() + static_cast<std::ptrdiff_t>(s * np + col));
      col += cp;
      out.prov[s].insert(out.prov[s].end(), c.prov[q].begin(), c.prov[q].end());
    }
  }
  std::map<std::string, int> seen;
  for (auto& k : out.propKeys)
    if (seen[k.key()]++) throw InputError("duplicate property " + k.key() + " in composition");
  return out;
}

PlainStructure split_compound(const System& s, size_t bound) {
  if (s.isLeaf()) {
    auto p = split_atomic(s.leaf);
    if (p.size() > bound) throw ResourceError("state bound " + std::to_string(bound) + " exceeded");
    return p;
  }
  auto diags = check_suitability(s);
  if (!diags.empty()) throw InputError(diags.front());
  std::vector<PlainStructure> parts;
  for (auto& c : s.children) parts.push_back(split_compound(*c, bound));
  return compose_plain(parts, s.criteria, bound);
}

int project_state(const PlainStructure& p, int state, int component) {
  if (!p.hasProvenance()) throw InputError("structure carries no provenance");
  return p.prov[static_cast<size_t>(state)][static_cast<size_t>(component)];
}

std::vector<int> project_path(const PlainStructure& p, const std::vector<int>& path, int component) {
  std::vector<int> out;
  for (int s : path) {
    int g = project_state(p, s, component);
    if (out.empty() || out.back() != g) out.push_back(g);
  }
  return out;
}

bool isomorphic(const PlainStructure& a, const PlainStructure& b) {
  if (a.size() != b.size() || a.components != b.components) return false;
  if (!a.hasProvenance() || !b.hasProvenance()) return false;
  auto keyOf = [](const PlainStructure& p, size_t s) {
    std::string k;
    for (size_t c = 0; c < p.components.size(); ++c)
      k += p.stageName(static_cast<int>(c), p.prov[s][c]) + "|";
    return k;
  };
  std::map<std::string, int> bIndex;
  for (size_t s = 0; s < b.size(); ++s) bIndex[keyOf(b, s)] = static_cast<int>(s);
  if (bIndex.size() != b.size()) return false;
  std::vector<int> m(a.size());
  for (size_t s = 0; s < a.size(); ++s) {
    auto it = bIndex.find(keyOf(a, s));
    if (it == bIndex.end()) return false;
    m[s] = it->second;
  }
  if (m[static_cast<size_t>(a.initial)] != b.initial) return false;
  for (size_t s = 0; s < a.size(); ++s) {
    std::vector<int> x;
    for (int t : a.succ[s]) x.push_back(m[static_cast<size_t>(t)]);
    std::vector<int> y = b.succ[static_cast<size_t>(m[s])];
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  for (size_t k = 0; k < a.propKeys.size(); ++k) {
    int j = b.findProp(a.propKeys[k].key());
    if (j < 0) return false;
    for (size_t s = 0; s < a.size(); ++s)
      if (a.prop(static_cast<int>(s), static_cast<int>(k)) != b.prop(m[s], j)) return false;
  }
  return true;
}

}  // namespace sv
