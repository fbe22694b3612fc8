#include "syncverif/core.hpp"

#include <algorithm>
#include <set>

namespace sv {

const PropertyDef* AtomicStructure::findProp(const std::string& n) const {
  for (auto& p : props)
    if (p.name == n) return &p;
  return nullptr;
}

std::string AtomicStructure::describe(int g) const {
  const Stage& s = stages[static_cast<size_t>(g)];
  std::string out;
  if (s.isState()) {
    out = "state{";
    for (size_t i = 0; i < s.vals.size(); ++i) {
      if (i) out += ",";
      out += (i < varNames.size() ? varNames[i] : "v" + std::to_string(i)) + "=" + s.vals[i].str();
    }
    return out + "}";
  }
  out = "trans " + s.term.name + "(";
  for (size_t i = 0; i < s.term.args.size(); ++i) {
    if (i) out += ",";
    out += s.term.args[i].str();
  }
  return out + ")";
}

int AtomicStructure::findStage(const std::string& d) const {
  std::string want;
  for (char c : d)
    if (c != ' ') want += c;
  for (size_t g = 0; g < stages.size(); ++g) {
    std::string have;
    for (char c : describe(static_cast<int>(g)))
      if (c != ' ') have += c;
    if (have == want) return static_cast<int>(g);
    // zero-argument transitions may be written without parentheses
    if (have.size() > 2 && have.compare(have.size() - 2, 2, "()") == 0 &&
        have.substr(0, have.size() - 2) == want)
      return static_cast<int>(g);
  }
  return -1;
}

std::string QualifiedProp::key() const {
  std::string k = component + "$" + name;
  if (!params.empty()) {
    k += "(";
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) k += ",";
      k += params[i].str();
    }
    k += ")";
  }
  return k;
}

bool sameCriteria(const std::vector<SyncCriterion>& a, const std::vector<SyncCriterion>& b) {
  auto norm = [](const std::vector<SyncCriterion>& v) {
    std::set<std::pair<std::string, std::string>> out;
    for (auto& c : v) {
      auto l = c.left.key(), r = c.right.key();
      if (r < l) std::swap(l, r);
      out.insert({l, r});
    }
    return out;
  };
  return norm(a) == norm(b);
}

SystemRef makeLeaf(AtomicRef s) {
  auto n = std::make_shared<System>();
  n->name = s->name;
  n->leaf = std::move(s);
  return n;
}

SystemRef makeNode(std::string name, std::vector<SystemRef> children,
                   std::vector<SyncCriterion> crit) {
  auto n = std::make_shared<System>();
  n->name = std::move(name);
  n->children = std::move(children);
  n->criteria = std::move(crit);
  return n;
}

std::vector<AtomicRef> atoms(const System& s) {
  if (s.isLeaf()) return {s.leaf};
  std::vector<AtomicRef> out;
  for (auto& c : s.children) {
    auto sub = atoms(*c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::vector<SyncCriterion> criteria(const System& s) {
  if (s.isLeaf()) return {};
  std::vector<SyncCriterion> out;
  for (auto& c : s.children) {
    auto sub = criteria(*c);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  out.insert(out.end(), s.criteria.begin(), s.criteria.end());
  return out;
}

SystemRef flatten(const System& s) {
  if (s.isLeaf()) return makeLeaf(s.leaf);
  std::vector<SystemRef> kids;
  for (auto& a : atoms(s)) kids.push_back(makeLeaf(a));
  return makeNode(s.name, std::move(kids), criteria(s));
}

const AtomicStructure* findAtom(const System& s, const std::string& name) {
  for (auto& a : atoms(s))
    if (a->name == name) return a.get();
  return nullptr;
}

const PropertyDef& resolveProp(const AtomicStructure& a, const QualifiedProp& p) {
  const PropertyDef* d = a.findProp(p.name);
  if (!d) throw InputError("unknown property " + p.key());
  if (d->params.size() != p.params.size())
    throw InputError("property " + p.key() + " expects " + std::to_string(d->params.size()) +
                     " parameter(s)");
  for (size_t i = 0; i < d->params.size(); ++i) {
    const auto& want = *d->params[i];
    const auto& got = *p.params[i].type;
    bool ok = want.kind == ValueType::Kind::Int ? got.kind == ValueType::Kind::Int &&
                                                      p.params[i].n >= want.lo &&
                                                      p.params[i].n <= want.hi
                                                : comparable(want, got);
    if (!ok) throw InputError("parameter " + std::to_string(i + 1) + " of " + p.key() + " is not a " + want.str());
  }
  return *d;
}

Value eval_property(const AtomicStructure& a, int stage, const QualifiedProp& p) {
  const PropertyDef& d = resolveProp(a, p);
  if (stage < 0 || static_cast<size_t>(stage) >= a.stages.size())
    throw InputError("stage out of range in " + a.name);
  return d.eval(a.stages[static_cast<size_t>(stage)], p.params);
}

std::vector<std::string> check_suitability(const System& s) {
  std::vector<std::string> diags;
  std::set<std::string> names;
  for (auto& a : atoms(s))
    if (!names.insert(a->name).second) diags.push_back("duplicate component name " + a->name);
  // each node's criteria must resolve within its own subtree
  std::function<void(const System&)> walk = [&](const System& n) {
    if (n.isLeaf()) return;
    for (auto& c : n.children) walk(*c);
    for (auto& c : n.criteria) {
      TypeRef types[2];
      bool ok = true;
      const QualifiedProp* sides[2] = {&c.left, &c.right};
      for (int i = 0; i < 2; ++i) {
        const AtomicStructure* a = findAtom(n, sides[i]->component);
        if (!a) {
          diags.push_back("criterion " + c.str() + ": unknown component " + sides[i]->component);
          ok = false;
          continue;
        }
        try {
          types[i] = resolveProp(*a, *sides[i]).codomain;
        } catch (const InputError& e) {
          diags.push_back("criterion " + c.str() + ": " + e.what());
          ok = false;
        }
      }
      if (ok && !comparable(*types[0], *types[1]))
        diags.push_back("criterion " + c.str() + ": type mismatch " + types[0]->str() + " vs " +
                        types[1]->str());
    }
  };
  walk(s);
  return diags;
}

bool compatible_stages(const std::map<std::string, std::pair<const AtomicStructure*, int>>& stages,
                       const std::vector<SyncCriterion>& crit) {
  for (auto& c : crit) {
    auto l = stages.find(c.left.component);
    auto r = stages.find(c.right.component);
    if (l == stages.end() || r == stages.end())
      throw InputError("criterion " + c.str() + " names a component without a stage");
    if (eval_property(*l->second.first, l->second.second, c.left) !=
        eval_property(*r->second.first, r->second.second, c.right))
      return false;
  }
  return true;
}

std::vector<std::string> validate(const AtomicStructure& a) {
  std::vector<std::string> out;
  if (a.succ.size() != a.stages.size()) out.push_back("adjacency size differs from stage count");
  if (a.initial < 0 || static_cast<size_t>(a.initial) >= a.stages.size())
    out.push_back("initial stage out of range");
  for (size_t g = 0; g < a.succ.size(); ++g)
    for (int h : a.succ[g]) {
      if (h < 0 || static_cast<size_t>(h) >= a.stages.size()) {
        out.push_back("edge target out of range");
        continue;
      }
      if (a.stages[g].kind == a.stages[static_cast<size_t>(h)].kind)
        out.push_back("non-bipartite edge " + a.describe(static_cast<int>(g)) + " -> " +
                      a.describe(h));
    }
  return out;
}

}  // namespace sv
