#include "syncverif/sim.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace sv {

namespace {

std::vector<std::string> splitArgs(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    if (c != ' ') cur += c;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

QualifiedProp parse_prop_ref(const AtomicStructure& a, const std::string& text) {
  std::string name = text, args;
  if (auto lp = text.find('('); lp != std::string::npos) {
    if (text.back() != ')') throw InputError("malformed property reference " + text);
    name = text.substr(0, lp);
    args = text.substr(lp + 1, text.size() - lp - 2);
  }
  name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
  const PropertyDef* def = a.findProp(name);
  if (!def) throw InputError(a.name + " has no property " + name);
  QualifiedProp q{a.name, name, {}};
  auto parts = splitArgs(args);
  if (parts.size() != def->params.size())
    throw InputError(a.name + "$" + name + " takes " + std::to_string(def->params.size()) + " arguments");
  for (size_t i = 0; i < parts.size(); ++i) q.params.push_back(parseValue(parts[i], def->params[i]));
  return q;
}

LabeledGraph view(const AtomicStructure& a, const std::vector<std::string>& props) {
  LabeledGraph g;
  g.succ = a.succ;
  g.initial = a.initial;
  std::vector<QualifiedProp> qs;
  for (const auto& p : props) qs.push_back(parse_prop_ref(a, p));
  for (size_t s = 0; s < a.size(); ++s) {
    g.names.push_back(a.describe(static_cast<int>(s)));
    std::vector<Value> row;
    for (const auto& q : qs) row.push_back(eval_property(a, static_cast<int>(s), q));
    g.values.push_back(std::move(row));
  }
  return g;
}

LabeledGraph view(const PlainStructure& p, const std::vector<std::string>& keys) {
  LabeledGraph g;
  g.succ = p.succ;
  g.initial = p.initial;
  std::vector<int> idx;
  for (const auto& k : keys) {
    int i = p.findProp(k);
    if (i < 0) throw InputError("structure has no property " + k);
    idx.push_back(i);
  }
  for (size_t s = 0; s < p.size(); ++s) {
    std::string name = "<";
    for (size_t c = 0; p.hasProvenance() && c < p.components.size(); ++c)
      name += (c ? "," : "") + p.stageName(static_cast<int>(c), p.prov[s][c]);
    g.names.push_back(p.hasProvenance() ? name + ">" : std::to_string(s));
    std::vector<Value> row;
    for (int i : idx) row.push_back(p.prop(static_cast<int>(s), i));
    g.values.push_back(std::move(row));
  }
  return g;
}

StageRelation StageRelation::inverse() const {
  StageRelation r;
  for (auto [a, b] : pairs) r.pairs.emplace_back(b, a);
  for (auto [a, b] : props) r.props.emplace_back(b, a);
  return r;
}

StageRelation StageRelation::identity(size_t n, const std::vector<std::string>& props) {
  StageRelation r;
  for (size_t i = 0; i < n; ++i) r.pairs.emplace_back(static_cast<int>(i), static_cast<int>(i));
  for (const auto& p : props) r.props.emplace_back(p, p);
  return r;
}

SimResult check_simulation(const LabeledGraph& L, const LabeledGraph& R, const StageRelation& rel) {
  SimResult res;
  std::vector<std::set<int>> related(L.succ.size());
  for (auto [a, b] : rel.pairs) {
    if (a < 0 || b < 0 || static_cast<size_t>(a) >= L.succ.size() || static_cast<size_t>(b) >= R.succ.size())
      throw InputError("relation refers to a stage that does not exist");
    related[static_cast<size_t>(a)].insert(b);
  }
  auto fail = [&](std::string clause, int a, int b, std::string detail) {
    res.ok = false;
    res.clause = std::move(clause);
    res.left = a;
    res.right = b;
    res.detail = std::move(detail);
    return res;
  };
  if (!related[static_cast<size_t>(L.initial)].count(R.initial))
    return fail("initial", L.initial, R.initial, "initial stages are not related");
  for (auto [a, b] : rel.pairs)
    for (size_t k = 0; k < rel.props.size(); ++k)
      if (L.values[static_cast<size_t>(a)][k] != R.values[static_cast<size_t>(b)][k])
        return fail("labels", a, b,
                    rel.props[k].first + " differs: " + L.values[static_cast<size_t>(a)][k].str() + " vs " +
                        R.values[static_cast<size_t>(b)][k].str());
  for (auto [a, b] : rel.pairs)
    for (int a2 : L.succ[static_cast<size_t>(a)]) {
      const auto& target = related[static_cast<size_t>(a2)];
      if (target.count(b)) continue;
      // search a path from b through stages related to a, ending in one related to a2
      const auto& via = related[static_cast<size_t>(a)];
      std::set<int> seen{b};
      std::deque<int> q{b};
      bool found = false;
      while (!q.empty() && !found) {
        int h = q.front();
        q.pop_front();
        for (int k : R.succ[static_cast<size_t>(h)]) {
          if (target.count(k)) {
            found = true;
            break;
          }
          if (via.count(k) && seen.insert(k).second) q.push_back(k);
        }
      }
      if (!found) {
        SimResult r = fail("step", a, b, "no matching path for " + L.names[static_cast<size_t>(a)] + " -> " + L.names[static_cast<size_t>(a2)]);
        r.leftNext = a2;
        return r;
      }
    }
  return res;
}

namespace {

std::vector<std::string> lefts(const StageRelation& r) {
  std::vector<std::string> v;
  for (auto& p : r.props) v.push_back(p.first);
  return v;
}
std::vector<std::string> rights(const StageRelation& r) {
  std::vector<std::string> v;
  for (auto& p : r.props) v.push_back(p.second);
  return v;
}

}  // namespace

SimResult check_simulation(const AtomicStructure& l, const AtomicStructure& r, const StageRelation& rel) {
  return check_simulation(view(l, lefts(rel)), view(r, rights(rel)), rel);
}

BisimResult check_bisimulation(const LabeledGraph& l, const LabeledGraph& r, const StageRelation& rel) {
  return {check_simulation(l, r, rel), check_simulation(r, l, rel.inverse())};
}

BisimResult check_bisimulation(const AtomicStructure& l, const AtomicStructure& r, const StageRelation& rel) {
  auto lv = view(l, lefts(rel));
  auto rv = view(r, rights(rel));
  return check_bisimulation(lv, rv, rel);
}

SimResult check_simulation(const PlainStructure& l, const PlainStructure& r, const StageRelation& rel) {
  return check_simulation(view(l, lefts(rel)), view(r, rights(rel)), rel);
}

BisimResult check_bisimulation(const PlainStructure& l, const PlainStructure& r, const StageRelation& rel) {
  return check_bisimulation(view(l, lefts(rel)), view(r, rights(rel)), rel);
}

namespace {

std::string localName(const QualifiedProp& q) {
  std::string k = q.key();
  return k.substr(k.find('$') + 1);
}

}  // namespace

std::vector<std::string> criteria_correspond(const PlainStructure& left, const PlainStructure& right,
                                             const std::vector<StageRelation>& rels) {
  std::vector<std::string> errs;
  if (left.components.size() != right.components.size() || rels.size() != left.components.size()) {
    errs.push_back("compounds must have the same number of components as there are relations");
    return errs;
  }
  using Side = std::pair<int, std::string>;
  using Norm = std::pair<Side, Side>;
  auto norm = [](Side a, Side b) { return a < b ? Norm{a, b} : Norm{b, a}; };
  auto translate = [&](const PlainStructure& p, const QualifiedProp& q, bool fromLeft, Side& out) {
    int n = p.componentIndex(q.component);
    if (n < 0) return false;
    std::string name = localName(q);
    for (auto& [lp, rp] : rels[static_cast<size_t>(n)].props)
      if ((fromLeft ? lp : rp) == name) {
        out = {n, rp};
        return true;
      }
    return false;
  };
  std::set<Norm> ls, rs;
  for (const auto& c : left.criteria) {
    Side a, b;
    if (!translate(left, c.left, true, a) || !translate(left, c.right, true, b))
      errs.push_back("left criterion " + c.str() + " uses a property outside the observed set");
    else ls.insert(norm(a, b));
  }
  for (const auto& c : right.criteria) {
    Side a, b;
    if (!translate(right, c.left, false, a) || !translate(right, c.right, false, b))
      errs.push_back("right criterion " + c.str() + " uses a property outside the observed set");
    else rs.insert(norm(a, b));
  }
  for (const auto& x : ls)
    if (!rs.count(x)) errs.push_back("criterion on " + x.first.second + " / " + x.second.second + " has no counterpart on the right");
  for (const auto& x : rs)
    if (!ls.count(x)) errs.push_back("criterion on " + x.first.second + " / " + x.second.second + " has no counterpart on the left");
  return errs;
}

StageRelation compose_relations(const std::vector<StageRelation>& rels, const PlainStructure& left,
                                 const PlainStructure& right) {
  auto errs = criteria_correspond(left, right, rels);
  if (!errs.empty()) throw InputError("criteria do not correspond: " + errs.front());
  const size_t N = rels.size();
  std::vector<std::set<std::pair<int, int>>> local(N);
  for (size_t n = 0; n < N; ++n) local[n].insert(rels[n].pairs.begin(), rels[n].pairs.end());
  StageRelation out;
  for (size_t n = 0; n < N; ++n)
    for (auto& [lp, rp] : rels[n].props) out.props.emplace_back(left.components[n] + "$" + lp, right.components[n] + "$" + rp);
  for (size_t a = 0; a < left.size(); ++a)
    for (size_t b = 0; b < right.size(); ++b) {
      bool all = true;
      for (size_t n = 0; n < N && all; ++n) all = local[n].count({left.prov[a][n], right.prov[b][n]}) > 0;
      if (all) out.pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
  return out;
}

Partition predicate_abstraction(const AtomicStructure& a, const std::vector<std::string>& props) {
  LabeledGraph g = view(a, props);
  std::map<std::pair<bool, std::vector<Value>>, int> ids;
  Partition part;
  for (size_t s = 0; s < a.size(); ++s) {
    auto key = std::make_pair(a.isState(static_cast<int>(s)), g.values[s]);
    auto it = ids.emplace(key, static_cast<int>(ids.size())).first;
    part.push_back(it->second);
  }
  return part;
}

Quotient quotient(const AtomicStructure& a, const Partition& part, const std::vector<std::string>& props) {
  if (part.size() != a.size()) throw InputError("partition does not cover every stage");
  int k = 0;
  for (int b : part) {
    if (b < 0) throw InputError("negative block number");
    k = std::max(k, b + 1);
  }
  Quotient q;
  q.blocks.assign(static_cast<size_t>(k), {});
  for (size_t s = 0; s < a.size(); ++s) q.blocks[static_cast<size_t>(part[s])].push_back(static_cast<int>(s));
  LabeledGraph g = view(a, props);
  for (size_t b = 0; b < q.blocks.size(); ++b) {
    const auto& blk = q.blocks[b];
    if (blk.empty()) throw InputError("block " + std::to_string(b) + " is empty");
    for (int s : blk) {
      if (a.isState(s) != a.isState(blk.front()))
        throw InputError("block " + std::to_string(b) + " mixes states and transitions");
      if (g.values[static_cast<size_t>(s)] != g.values[static_cast<size_t>(blk.front())])
        throw InputError("block " + std::to_string(b) + " merges " + a.describe(blk.front()) + " and " + a.describe(s) +
                         " with different observed values");
    }
  }
  auto abs = std::make_shared<AtomicStructure>();
  abs->name = a.name;
  abs->varNames = a.varNames;
  for (const auto& blk : q.blocks) abs->stages.push_back(a.stages[static_cast<size_t>(blk.front())]);
  abs->succ.assign(q.blocks.size(), {});
  for (size_t s = 0; s < a.size(); ++s)
    for (int t : a.succ[s]) {
      auto& v = abs->succ[static_cast<size_t>(part[s])];
      if (std::find(v.begin(), v.end(), part[static_cast<size_t>(t)]) == v.end()) v.push_back(part[static_cast<size_t>(t)]);
    }
  for (auto& v : abs->succ) std::sort(v.begin(), v.end());
  abs->initial = part[static_cast<size_t>(a.initial)];
  for (const auto& p : props) {
    const PropertyDef* d = a.findProp(parse_prop_ref(a, p).name);
    if (std::none_of(abs->props.begin(), abs->props.end(), [&](const PropertyDef& x) { return x.name == d->name; }))
      abs->props.push_back(*d);
  }
  for (size_t s = 0; s < a.size(); ++s) q.relation.pairs.emplace_back(static_cast<int>(s), part[s]);
  for (const auto& p : props) q.relation.props.emplace_back(p, p);
  q.structure = abs;
  auto check = check_simulation(a, *abs, q.relation);
  if (!check.ok) throw std::logic_error("quotient relation is not a simulation: " + check.detail);
  return q;
}

}  // namespace sv
