#include "gen.hpp"

#include <memory>

namespace svtest {

using namespace sv;

namespace {

int pick(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace

AtomicRef make_atomic(const std::string& name, const std::vector<bool>& kinds, const std::vector<std::vector<int>>& succ,
                      const std::vector<std::vector<bool>>& boolProps, const std::vector<int>& intProp) {
  auto a = std::make_shared<AtomicStructure>();
  a->name = name;
  a->varNames = {"id"};
  const int n = static_cast<int>(kinds.size());
  TypeRef idType = ValueType::integer(0, std::max(0, n - 1));
  for (int g = 0; g < n; ++g) {
    Stage s;
    if (kinds[static_cast<size_t>(g)]) {
      s.kind = Stage::Kind::State;
      s.vals = {Value::integer(g, idType)};
    } else {
      s.kind = Stage::Kind::Trans;
      s.term = TransTerm{"t", {Value::integer(g, idType)}};
    }
    a->stages.push_back(s);
  }
  a->succ = succ;
  a->initial = 0;
  auto idOf = [](const Stage& s) { return static_cast<size_t>(s.isState() ? s.vals[0].n : s.term.args[0].n); };
  for (size_t k = 0; k < boolProps.size(); ++k) {
    auto table = boolProps[k];
    a->props.push_back({"p" + std::to_string(k), {}, ValueType::boolean(),
                        [table, idOf](const Stage& s, const std::vector<Value>&) { return Value::boolean(table[idOf(s)]); }});
  }
  TypeRef vt = ValueType::integer(0, 2);
  auto ints = intProp;
  a->props.push_back({"v", {}, vt, [ints, idOf, vt](const Stage& s, const std::vector<Value>&) {
                        return Value::integer(ints[idOf(s)], vt);
                      }});
  return a;
}

AtomicRef random_atomic(Rng& rng, const std::string& name, int maxStages, int bools) {
  const int n = pick(rng, 1, maxStages);
  std::vector<bool> kinds(static_cast<size_t>(n));
  kinds[0] = true;
  for (int g = 1; g < n; ++g) kinds[static_cast<size_t>(g)] = coin(rng, 0.5);
  std::vector<std::vector<int>> succ(static_cast<size_t>(n));
  const double density = std::uniform_real_distribution<double>(0.25, 0.7)(rng);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (kinds[static_cast<size_t>(g)] != kinds[static_cast<size_t>(h)] && coin(rng, density))
        succ[static_cast<size_t>(g)].push_back(h);
  std::vector<std::vector<bool>> bp(static_cast<size_t>(bools), std::vector<bool>(static_cast<size_t>(n)));
  for (auto& row : bp)
    for (size_t g = 0; g < row.size(); ++g) row[g] = coin(rng, 0.5);
  std::vector<int> iv(static_cast<size_t>(n));
  for (auto& x : iv) x = pick(rng, 0, 2);
  return make_atomic(name, kinds, succ, bp, iv);
}

RandomCompound random_compound(Rng& rng, int maxComps, int maxStages, int maxCriteria) {
  RandomCompound rc;
  const int k = pick(rng, 1, maxComps);
  std::vector<SystemRef> leaves;
  for (int i = 0; i < k; ++i) {
    rc.comps.push_back(random_atomic(rng, "C" + std::to_string(i), maxStages));
    leaves.push_back(makeLeaf(rc.comps.back()));
  }
  if (k == 1) {
    rc.system = leaves.front();
    return rc;
  }
  std::vector<SyncCriterion> crit;
  const int nc = pick(rng, 0, maxCriteria);
  for (int c = 0; c < nc; ++c) {
    int a = pick(rng, 0, k - 1), b = pick(rng, 0, k - 2);
    if (b >= a) ++b;
    QualifiedProp l{"C" + std::to_string(a), "p" + std::to_string(pick(rng, 0, 1)), {}};
    QualifiedProp r{"C" + std::to_string(b), "p" + std::to_string(pick(rng, 0, 1)), {}};
    bool clash = false;
    for (auto& e : crit) clash = clash || e.left == l || e.right == l || e.left == r || e.right == r;
    // compositions must start in compatible stages
    if (eval_property(*rc.comps[static_cast<size_t>(a)], 0, l) != eval_property(*rc.comps[static_cast<size_t>(b)], 0, r))
      clash = true;
    if (!clash) crit.push_back({l, r});
  }
  rc.system = makeNode("RANDOM", leaves, crit);
  return rc;
}

std::vector<std::string> atom_texts(const std::vector<AtomicRef>& comps) {
  std::vector<std::string> out;
  for (const auto& c : comps) {
    for (const auto& p : c->props)
      if (p.codomain->kind == ValueType::Kind::Bool) out.push_back(c->name + "$" + p.name);
    out.push_back(c->name + "$v == 1");
    out.push_back(c->name + "$v <= 1");
  }
  return out;
}

std::string random_formula(Rng& rng, const std::vector<std::string>& atoms, int depth) {
  if (depth <= 0 || coin(rng, 0.25)) {
    int k = pick(rng, 0, static_cast<int>(atoms.size()) + 1);
    if (k == static_cast<int>(atoms.size())) return "true";
    if (k == static_cast<int>(atoms.size()) + 1) return "false";
    return "(" + atoms[static_cast<size_t>(k)] + ")";
  }
  auto sub = [&]() { return random_formula(rng, atoms, depth - 1); };
  switch (pick(rng, 0, 9)) {
    case 0: return "~" + sub();
    case 1: return "(" + sub() + " /\\ " + sub() + ")";
    case 2: return "(" + sub() + " \\/ " + sub() + ")";
    case 3: return "(" + sub() + " -> " + sub() + ")";
    case 4: return "(" + sub() + " U " + sub() + ")";
    case 5: return "(" + sub() + " W " + sub() + ")";
    case 6: return "(" + sub() + " R " + sub() + ")";
    case 7: return "[]" + sub();
    case 8: return "<>" + sub();
    default: return "(" + sub() + " <-> " + sub() + ")";
  }
}

std::string random_safety_formula(Rng& rng, const std::vector<std::string>& atoms, int depth) {
  if (depth <= 0 || coin(rng, 0.3)) {
    std::string a = "(" + atoms[static_cast<size_t>(pick(rng, 0, static_cast<int>(atoms.size()) - 1))] + ")";
    return coin(rng, 0.4) ? "~" + a : a;
  }
  auto sub = [&]() { return random_safety_formula(rng, atoms, depth - 1); };
  switch (pick(rng, 0, 4)) {
    case 0: return "(" + sub() + " /\\ " + sub() + ")";
    case 1: return "(" + sub() + " \\/ " + sub() + ")";
    case 2: return "[]" + sub();
    case 3: return "(" + sub() + " W " + sub() + ")";
    default: return "(" + sub() + " R " + sub() + ")";
  }
}

Unfolding unfold_stage(Rng& rng, const AtomicRef& a) {
  const int n = static_cast<int>(a->size());
  const int g = pick(rng, 0, n - 1);
  std::vector<bool> kinds;
  for (int s = 0; s < n; ++s) kinds.push_back(a->isState(s));
  kinds.push_back(a->isState(g));
  std::vector<std::vector<int>> succ = a->succ;
  succ.push_back(a->succ[static_cast<size_t>(g)]);
  for (int s = 0; s < n; ++s)
    for (int& t : succ[static_cast<size_t>(s)])
      if (t == g && coin(rng, 0.5)) t = n;

  std::vector<std::vector<bool>> bp;
  std::vector<int> iv;
  for (const auto& p : a->props) {
    std::vector<bool> row;
    std::vector<int> ints;
    for (int s = 0; s <= n; ++s) {
      Value x = p.eval(a->stages[static_cast<size_t>(s < n ? s : g)], {});
      row.push_back(x.asBool());
      ints.push_back(static_cast<int>(x.n));
    }
    if (p.codomain->kind == ValueType::Kind::Bool)
      bp.push_back(row);
    else
      iv = ints;
  }
  Unfolding u;
  u.copy = make_atomic(a->name, kinds, succ, bp, iv);
  for (int s = 0; s < n; ++s) u.rel.emplace_back(s, s);
  u.rel.emplace_back(g, n);
  return u;
}

}  // namespace svtest
