#include <deque>
#include <set>
#include <unordered_map>

#include "syncverif/dsl.hpp"

namespace sv {

namespace {

std::string at(const Pos& p) { return std::to_string(p.line) + ":" + std::to_string(p.col) + ": "; }
[[noreturn]] void fault(const Pos& p, const std::string& m) { throw InputError(at(p) + m); }

bool isInt(const TypeRef& t) { return t && t->kind == ValueType::Kind::Int; }
bool isBool(const TypeRef& t) { return t && t->kind == ValueType::Kind::Bool; }

bool compatibleTypes(const TypeRef& a, const TypeRef& b) { return assignable(*a, *b) || assignable(*b, *a); }

// Names visible while checking one expression.
struct Scope {
  std::vector<std::pair<std::string, TypeRef>> locals;
  const std::vector<std::string>* varNames = nullptr;
  const std::vector<TypeRef>* varTypes = nullptr;
  std::vector<EnumRef> enums;
  // Formula contexts resolve property references; returns null type when the name is no property.
  std::function<TypeRef(Expr&, bool qualifiedOrCall)> prop;
};

struct Checker {
  TypeRef check(Expr& e, const Scope& s, const TypeRef& hint = nullptr) {
    e.type = infer(e, s, hint);
    return e.type;
  }

  TypeRef expectBool(Expr& e, const Scope& s, const char* what) {
    TypeRef t = check(e, s);
    if (!isBool(t)) fault(e.pos, std::string(what) + " must be bool, found " + t->str());
    return t;
  }

  bool resolveSymbol(Expr& e, const Scope& s, const TypeRef& hint) {
    if (hint && (hint->kind == ValueType::Kind::Enum || hint->kind == ValueType::Kind::Set) && hint->en) {
      int k = hint->en->index(e.name);
      if (k >= 0) {
        e.ref = Expr::Ref::Const;
        e.constant = Value::symbol(hint->en, k);
        return true;
      }
    }
    EnumRef found;
    int idx = -1;
    for (auto& en : s.enums) {
      int k = en->index(e.name);
      if (k < 0) continue;
      if (found && found != en) fault(e.pos, "ambiguous symbol " + e.name + " (" + found->name + ", " + en->name + ")");
      found = en;
      idx = k;
    }
    if (!found) return false;
    e.ref = Expr::Ref::Const;
    e.constant = Value::symbol(found, idx);
    return true;
  }

  // Checks the side that is not a bare name first so symbols can use the other side's type.
  std::pair<TypeRef, TypeRef> checkPair(Expr& a, Expr& b, const Scope& s) {
    if (a.op == Expr::Op::Name && b.op != Expr::Op::Name) {
      TypeRef tb = check(b, s);
      return {check(a, s, tb), tb};
    }
    TypeRef ta = check(a, s);
    return {ta, check(b, s, ta)};
  }

  TypeRef infer(Expr& e, const Scope& s, const TypeRef& hint) {
    using Op = Expr::Op;
    auto& a = e.args;
    switch (e.op) {
      case Op::BoolLit: return ValueType::boolean();
      case Op::IntLit: return ValueType::anyInt();
      case Op::Name: {
        for (size_t i = s.locals.size(); i-- > 0;)
          if (s.locals[i].first == e.name) {
            e.ref = Expr::Ref::Local;
            e.slot = static_cast<int>(i);
            return s.locals[i].second;
          }
        if (s.varNames)
          for (size_t i = 0; i < s.varNames->size(); ++i)
            if ((*s.varNames)[i] == e.name) {
              e.ref = Expr::Ref::Var;
              e.slot = static_cast<int>(i);
              return (*s.varTypes)[i];
            }
        if (s.prop)
          if (TypeRef t = s.prop(e, false)) return t;
        if (resolveSymbol(e, s, hint)) return e.constant.type;
        fault(e.pos, "undefined name " + e.name);
      }
      case Op::Prop: {
        if (!s.prop) fault(e.pos, "property reference " + printExpr(e) + " is only allowed in formulas");
        if (TypeRef t = s.prop(e, true)) return t;
        fault(e.pos, "unknown property " + printExpr(e));
      }
      case Op::SetLit: {
        EnumRef en = hint && hint->kind == ValueType::Kind::Set ? hint->en : nullptr;
        TypeRef elemHint = en ? ValueType::enumeration(en) : nullptr;
        for (auto& x : a) {
          TypeRef t = check(*x, s, elemHint);
          if (t->kind != ValueType::Kind::Enum) fault(x->pos, "set elements must be enum symbols");
          if (en && t->en != en) fault(x->pos, "set mixes enums " + en->name + " and " + t->en->name);
          en = t->en;
          elemHint = t;
        }
        return ValueType::setOf(a.empty() ? (hint && hint->kind == ValueType::Kind::Set ? hint->en : nullptr) : en);
      }
      case Op::TupleLit: {
        std::vector<TypeRef> ts;
        for (size_t i = 0; i < a.size(); ++i) {
          TypeRef h = hint && hint->kind == ValueType::Kind::Tuple && i < hint->elems.size() ? hint->elems[i] : nullptr;
          ts.push_back(check(*a[i], s, h));
        }
        return ValueType::tuple(std::move(ts));
      }
      case Op::Proj: {
        TypeRef t = check(*a[0], s);
        if (t->kind != ValueType::Kind::Tuple) fault(e.pos, "projection of a non-tuple");
        if (e.ival < 0 || static_cast<size_t>(e.ival) >= t->elems.size()) fault(e.pos, "tuple index out of range");
        return t->elems[static_cast<size_t>(e.ival)];
      }
      case Op::Not:
        expectBool(*a[0], s, "operand of not");
        return ValueType::boolean();
      case Op::Neg:
        if (!isInt(check(*a[0], s))) fault(e.pos, "negation needs an int");
        return ValueType::anyInt();
      case Op::Size:
        if (check(*a[0], s)->kind != ValueType::Kind::Set) fault(e.pos, "# needs a set");
        return ValueType::anyInt();
      case Op::And:
      case Op::Or:
        expectBool(*a[0], s, "operand");
        expectBool(*a[1], s, "operand");
        return ValueType::boolean();
      case Op::Eq:
      case Op::Ne: {
        auto [ta, tb] = checkPair(*a[0], *a[1], s);
        if (!compatibleTypes(ta, tb)) fault(e.pos, "cannot compare " + ta->str() + " with " + tb->str());
        return ValueType::boolean();
      }
      case Op::Lt:
      case Op::Le:
      case Op::Gt:
      case Op::Ge:
        if (!isInt(check(*a[0], s)) || !isInt(check(*a[1], s))) fault(e.pos, "ordering needs ints");
        return ValueType::boolean();
      case Op::Add:
      case Op::Sub: {
        auto [ta, tb] = checkPair(*a[0], *a[1], s);
        if (isInt(ta) && isInt(tb)) return ValueType::anyInt();
        if (ta->kind == ValueType::Kind::Set && tb->kind == ValueType::Kind::Set && compatibleTypes(ta, tb)) {
          if (!ta->en && tb->en) {
            check(*a[0], s, tb);
            return tb;
          }
          if (ta->en && !tb->en) check(*a[1], s, ta);
          return ta;
        }
        fault(e.pos, "operands of " + std::string(e.op == Op::Add ? "+" : "-") + " must be ints or sets of one enum");
      }
      case Op::In: {
        TypeRef ts = a[0]->op == Expr::Op::Name ? nullptr : check(*a[0], s);
        TypeRef tset = check(*a[1], s, ts ? ValueType::setOf(ts->en) : nullptr);
        if (tset->kind != ValueType::Kind::Set) fault(e.pos, "right side of in must be a set");
        if (!ts) ts = check(*a[0], s, tset->en ? ValueType::enumeration(tset->en) : nullptr);
        if (ts->kind != ValueType::Kind::Enum || (tset->en && ts->en != tset->en))
          fault(e.pos, "membership of " + ts->str() + " in " + tset->str());
        return ValueType::boolean();
      }
      case Op::Ite: {
        expectBool(*a[0], s, "condition");
        auto [t1, t2] = checkPair(*a[1], *a[2], s);
        if (!compatibleTypes(t1, t2)) fault(e.pos, "branches have types " + t1->str() + " and " + t2->str());
        if (isInt(t1)) return comparable(*t1, *t2) ? t1 : ValueType::anyInt();
        if (t1->kind == ValueType::Kind::Set && !t1->en) return t2;
        return t1;
      }
    }
    fault(e.pos, "bad expression");
  }
};

// Runtime conformance of a value with a declared type; ints are range checked.
Value conform(const Value& v, const TypeRef& t, const Pos& p, const std::string& what) {
  Value out = v;
  switch (t->kind) {
    case ValueType::Kind::Int:
      if (!t->isAnyInt() && (v.n < t->lo || v.n > t->hi))
        fault(p, what + " value " + std::to_string(v.n) + " outside " + t->str());
      out.type = t;
      break;
    case ValueType::Kind::Tuple:
      for (size_t i = 0; i < t->elems.size() && i < out.elems.size(); ++i)
        out.elems[i] = conform(v.elems[i], t->elems[i], p, what);
      out.type = t;
      break;
    case ValueType::Kind::Set:
      if (t->en) out.type = t;
      break;
    default: out.type = t; break;
  }
  return out;
}

struct TypeEnv {
  std::map<std::string, EnumRef> enums;
  std::map<std::string, TypeRef> aliases;
  std::vector<EnumRef> enumList;

  void addEnum(const EnumAst& a, const std::string& scope) {
    if (enums.count(a.name) || aliases.count(a.name)) fault(a.pos, "duplicate type name " + a.name);
    auto d = std::make_shared<EnumDecl>();
    d->name = a.name;
    d->scope = scope;
    std::set<std::string> seen;
    for (auto& sym : a.symbols) {
      if (!seen.insert(sym).second) fault(a.pos, "duplicate symbol " + sym + " in enum " + a.name);
      d->symbols.push_back(sym);
    }
    if (d->symbols.size() > 63) fault(a.pos, "enum " + a.name + " has more than 63 symbols");
    enums[a.name] = d;
    enumList.push_back(d);
  }

  TypeRef resolve(const TypeAst& t) const {
    switch (t.kind) {
      case TypeAst::Kind::Bool: return ValueType::boolean();
      case TypeAst::Kind::Range:
        if (t.lo > t.hi) fault(t.pos, "empty range");
        return ValueType::integer(t.lo, t.hi);
      case TypeAst::Kind::Named: {
        if (auto it = enums.find(t.name); it != enums.end()) return ValueType::enumeration(it->second);
        if (auto it = aliases.find(t.name); it != aliases.end()) return it->second;
        fault(t.pos, "unknown type " + t.name);
      }
      case TypeAst::Kind::Set: {
        auto it = enums.find(t.name);
        if (it == enums.end()) fault(t.pos, "unknown enum " + t.name);
        return ValueType::setOf(it->second);
      }
      case TypeAst::Kind::Tuple: {
        std::vector<TypeRef> xs;
        for (auto& e : t.elems) xs.push_back(resolve(e));
        return ValueType::tuple(std::move(xs));
      }
    }
    fault(t.pos, "bad type");
  }

  void addAlias(const TypeDefAst& d) {
    if (enums.count(d.name) || aliases.count(d.name)) fault(d.pos, "duplicate type name " + d.name);
    aliases[d.name] = resolve(d.type);
  }
};

struct RuleIR {
  std::string name;
  std::vector<TypeRef> paramTypes;
  ExprPtr guard;
  std::string label;
  std::vector<ExprPtr> labelArgs;
  std::vector<std::pair<int, ExprPtr>> updates;
  Pos pos;
};

struct SystemIR {
  std::string name;
  std::vector<std::string> varNames;
  std::vector<TypeRef> varTypes;
  std::vector<Value> init;
  std::vector<RuleIR> rules;
  std::vector<PropertyDef> props;
};

TypeEnv sharedEnv(const SpecFile& spec) {
  TypeEnv env;
  for (auto& e : spec.sharedEnums) env.addEnum(e, "shared");
  for (auto& t : spec.sharedTypes) env.addAlias(t);
  return env;
}

const SystemAst& findSystemAst(const SpecFile& spec, const std::string& name) {
  for (auto& s : spec.systems)
    if (s.name == name) return s;
  throw InputError("unknown system " + name);
}

// Deep copy of every expression so each declared system owns its resolution data.
SystemAst cloneSystemAst(const SystemAst& in) {
  SystemAst s = in;
  auto c = [](ExprPtr& e) {
    if (e) e = cloneExpr(*e);
  };
  for (auto& v : s.vars) c(v.init);
  for (auto& r : s.rules) {
    c(r.guard);
    for (auto& a : r.labelArgs) c(a);
    for (auto& u : r.updates) c(u.second);
  }
  for (auto& p : s.props) {
    c(p.deflt);
    c(p.atValue);
    for (auto& k : p.cases) c(k.body);
  }
  return s;
}

SystemIR checkSystem(const TypeEnv& shared, const SystemAst& original, const std::string& name) {
  const SystemAst decl = cloneSystemAst(original);
  TypeEnv env = shared;
  for (auto& e : decl.enums) env.addEnum(e, name);
  for (auto& t : decl.types) env.addAlias(t);
  // symbols must be unique across visible enums so bare names resolve
  {
    std::map<std::string, std::string> owner;
    for (auto& en : env.enumList)
      for (auto& sym : en->symbols)
        if (auto [it, fresh] = owner.emplace(sym, en->name); !fresh && en->scope == name)
          fault(decl.pos, "symbol " + sym + " of enum " + en->name + " clashes with enum " + it->second);
  }

  SystemIR ir;
  ir.name = name;
  Checker ck;
  Scope base;
  base.enums = env.enumList;
  base.varNames = &ir.varNames;
  base.varTypes = &ir.varTypes;

  Scope initScope;
  initScope.enums = env.enumList;
  for (auto& v : decl.vars) {
    for (auto& n : ir.varNames)
      if (n == v.name) fault(v.pos, "duplicate variable " + v.name);
    TypeRef t = env.resolve(v.type);
    TypeRef it = ck.check(*v.init, initScope, t);
    if (!assignable(*t, *it)) fault(v.pos, "initial value of " + v.name + " has type " + it->str() + ", expected " + t->str());
    ir.init.push_back(conform(evalExpr(*v.init, EvalEnv{}), t, v.pos, "initial"));
    ir.varNames.push_back(v.name);
    ir.varTypes.push_back(t);
  }

  std::set<std::string> ruleNames;
  for (auto& r : decl.rules) {
    if (!ruleNames.insert(r.name).second) fault(r.pos, "duplicate rule " + r.name);
    RuleIR x;
    x.name = r.name;
    x.label = r.label;
    x.pos = r.pos;
    Scope sc = base;
    for (auto& p : r.params) {
      TypeRef t = env.resolve(p.type);
      domain(t);  // parameters must range over finite, enumerable types
      x.paramTypes.push_back(t);
      sc.locals.push_back({p.name, t});
    }
    ck.expectBool(*r.guard, sc, "guard");
    x.guard = r.guard;
    for (auto& e : r.labelArgs) ck.check(*e, sc);
    x.labelArgs = r.labelArgs;
    std::set<std::string> assigned;
    for (auto& [v, e] : r.updates) {
      int slot = -1;
      for (size_t i = 0; i < ir.varNames.size(); ++i)
        if (ir.varNames[i] == v) slot = static_cast<int>(i);
      if (slot < 0) fault(e->pos, "update of undeclared variable " + v);
      if (!assigned.insert(v).second) fault(e->pos, "variable " + v + " updated twice");
      TypeRef vt = ir.varTypes[static_cast<size_t>(slot)];
      TypeRef et = ck.check(*e, sc, vt);
      if (!assignable(*vt, *et)) fault(e->pos, "cannot assign " + et->str() + " to " + v + " : " + vt->str());
      x.updates.push_back({slot, e});
    }
    ir.rules.push_back(std::move(x));
  }

  std::set<std::string> propNames;
  for (auto& p : decl.props) {
    if (!propNames.insert(p.name).second) fault(p.pos, "duplicate property " + p.name);
    Scope sc = base;
    std::vector<TypeRef> ptypes;
    for (auto& q : p.params) {
      TypeRef t = env.resolve(q.type);
      domain(t);
      ptypes.push_back(t);
      sc.locals.push_back({q.name, t});
    }
    TypeRef declared = p.hasType ? env.resolve(p.type) : nullptr;
    TypeRef result = declared;
    auto body = [&](Expr& e, const Scope& s) {
      TypeRef t = ck.check(e, s, result);
      if (result && !assignable(*result, *t))
        fault(e.pos, "property " + p.name + " yields " + t->str() + ", declared " + result->str());
      if (!result) {
        if (t->isAnyInt()) fault(e.pos, "property " + p.name + " needs a declared type");
        result = t;
      }
    };
    // the body of a state case and of a plain property may read variables; others may not
    Scope noVars = sc;
    noVars.varNames = nullptr;
    noVars.varTypes = nullptr;
    struct CaseIR {
      bool isState;
      std::string trans;
      bool anyArgs;
      size_t arity;
      ExprPtr body;
    };
    std::vector<CaseIR> cases;
    ExprPtr deflt = p.deflt;
    switch (p.form) {
      case PropAst::Form::Plain:
        body(*p.deflt, noVars);
        break;
      case PropAst::Form::At:
        body(*p.atValue, noVars);
        body(*p.deflt, noVars);
        cases.push_back({false, p.atTrans, true, 0, p.atValue});
        break;
      case PropAst::Form::Match:
        for (auto& c : p.cases) {
          if (c.isState) {
            body(*c.body, sc);
          } else {
            Scope cs = noVars;
            for (auto& b : c.binders) cs.locals.push_back({b, nullptr});
            // binder types are taken from the label arguments of rules with this transition name
            std::vector<TypeRef> bt(c.binders.size());
            for (auto& r : ir.rules)
              if (r.label == c.trans && r.labelArgs.size() == c.binders.size())
                for (size_t i = 0; i < bt.size(); ++i) {
                  TypeRef t = r.labelArgs[i]->type;
                  if (!bt[i]) bt[i] = t;
                  else if (!compatibleTypes(bt[i], t)) fault(c.pos, "argument " + std::to_string(i) + " of " + c.trans + " has inconsistent types");
                  else if (isInt(bt[i]) && !comparable(*bt[i], *t)) bt[i] = ValueType::anyInt();
                }
            for (size_t i = 0; i < bt.size(); ++i) {
              if (!bt[i]) fault(c.pos, "no rule produces transition " + c.trans + " with " + std::to_string(bt.size()) + " arguments");
              cs.locals[sc.locals.size() + i].second = bt[i];
            }
            body(*c.body, cs);
          }
          cases.push_back({c.isState, c.trans, c.anyArgs, c.binders.size(), c.body});
        }
        body(*p.deflt, noVars);
        break;
    }
    PropertyDef def;
    def.name = p.name;
    def.params = ptypes;
    def.codomain = result;
    Pos pos = p.pos;
    std::string pname = p.name;
    def.eval = [cases, deflt, result, pos, pname](const Stage& g, const std::vector<Value>& params) {
      std::vector<Value> locals = params;
      EvalEnv env;
      env.locals = &locals;
      for (auto& c : cases) {
        if (c.isState) {
          if (!g.isState()) continue;
          env.vars = &g.vals;
          return conform(evalExpr(*c.body, env), result, pos, "property " + pname);
        }
        if (g.isState() || g.term.name != c.trans) continue;
        if (!c.anyArgs && g.term.args.size() != c.arity) continue;
        if (!c.anyArgs) locals.insert(locals.end(), g.term.args.begin(), g.term.args.end());
        return conform(evalExpr(*c.body, env), result, pos, "property " + pname);
      }
      return conform(evalExpr(*deflt, env), result, pos, "property " + pname);
    };
    ir.props.push_back(std::move(def));
  }
  return ir;
}

AtomicRef elaborateIR(const SystemIR& ir, size_t bound) {
  auto a = std::make_shared<AtomicStructure>();
  a->name = ir.name;
  a->varNames = ir.varNames;
  a->props = ir.props;

  struct VHash {
    size_t operator()(const std::vector<Value>& v) const {
      size_t h = 0;
      for (auto& x : v) h = h * 1000003u ^ hashValue(x);
      return h;
    }
  };
  struct THash {
    size_t operator()(const TransTerm& t) const {
      size_t h = std::hash<std::string>()(t.name);
      for (auto& x : t.args) h = h * 1000003u ^ hashValue(x);
      return h;
    }
  };
  std::unordered_map<std::vector<Value>, int, VHash> stateIds;
  std::unordered_map<TransTerm, int, THash> transIds;
  std::deque<int> queue;

  auto addStage = [&](Stage s) {
    if (a->stages.size() >= bound)
      throw ResourceError("system " + ir.name + " exceeds the bound of " + std::to_string(bound) + " stages");
    a->stages.push_back(std::move(s));
    a->succ.emplace_back();
    return static_cast<int>(a->stages.size() - 1);
  };
  auto stateId = [&](const std::vector<Value>& vals) {
    auto it = stateIds.find(vals);
    if (it != stateIds.end()) return it->second;
    Stage s;
    s.kind = Stage::Kind::State;
    s.vals = vals;
    int id = addStage(std::move(s));
    stateIds.emplace(vals, id);
    queue.push_back(id);
    return id;
  };
  auto addEdge = [&](int from, int to) {
    auto& v = a->succ[static_cast<size_t>(from)];
    if (std::find(v.begin(), v.end(), to) == v.end()) v.push_back(to);
  };

  a->initial = stateId(ir.init);
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    const std::vector<Value> vals = a->stages[static_cast<size_t>(q)].vals;
    for (auto& r : ir.rules) {
      std::vector<std::vector<Value>> domains;
      for (auto& t : r.paramTypes) domains.push_back(domain(t));
      std::vector<size_t> idx(domains.size(), 0);
      bool done = false;
      for (auto& d : domains) done = done || d.empty();
      while (!done) {
        std::vector<Value> locals;
        for (size_t i = 0; i < idx.size(); ++i) locals.push_back(domains[i][idx[i]]);
        EvalEnv env;
        env.vars = &vals;
        env.locals = &locals;
        if (evalExpr(*r.guard, env).asBool()) {
          TransTerm term;
          term.name = r.label;
          for (auto& e : r.labelArgs) {
            Value v = evalExpr(*e, env);
            if (!v.type || v.type->isAnyInt()) v.type = ValueType::anyInt();
            term.args.push_back(v);
          }
          std::vector<Value> nv = vals;
          for (auto& [slot, e] : r.updates)
            nv[static_cast<size_t>(slot)] =
                conform(evalExpr(*e, env), ir.varTypes[static_cast<size_t>(slot)], r.pos,
                        "rule " + r.name + ": " + ir.varNames[static_cast<size_t>(slot)]);
          int t;
          if (auto it = transIds.find(term); it != transIds.end()) {
            t = it->second;
          } else {
            Stage s;
            s.kind = Stage::Kind::Trans;
            s.term = term;
            t = addStage(std::move(s));
            transIds.emplace(term, t);
          }
          addEdge(q, t);
          addEdge(t, stateId(nv));
        }
        // next binding, lexicographic with the last parameter fastest
        size_t k = idx.size();
        while (k > 0) {
          --k;
          if (++idx[k] < domains[k].size()) break;
          idx[k] = 0;
          if (k == 0) done = true;
        }
        if (idx.empty()) done = true;
      }
    }
  }
  return a;
}

const SystemAst& cloneTarget(const SpecFile& spec, const SystemAst& s) {
  const SystemAst* cur = &s;
  std::set<std::string> seen;
  while (!cur->cloneOf.empty()) {
    if (!seen.insert(cur->name).second) fault(s.pos, "cyclic system alias " + s.name);
    cur = &findSystemAst(spec, cur->cloneOf);
  }
  return *cur;
}

}  // namespace

AtomicRef elaborate(const SpecFile& spec, const std::string& system, size_t bound) {
  const SystemAst& decl = findSystemAst(spec, system);
  return elaborateIR(checkSystem(sharedEnv(spec), cloneTarget(spec, decl), system), bound);
}

const SystemRef& Model::system(const std::string& name) const {
  auto it = systems.find(name);
  if (it == systems.end()) throw InputError("unknown system " + name);
  return it->second;
}

namespace {

Value constArg(Expr& e, const TypeRef& t, const std::vector<EnumRef>& enums) {
  Checker ck;
  Scope s;
  s.enums = enums;
  TypeRef et = ck.check(e, s, t);
  if (!assignable(*t, *et)) fault(e.pos, "argument of type " + et->str() + " where " + t->str() + " expected");
  return conform(evalExpr(e, EvalEnv{}), t, e.pos, "argument");
}

std::vector<EnumRef> systemEnums(const System& s) {
  std::vector<EnumRef> out;
  auto add = [&](const TypeRef& t, auto&& self) -> void {
    if (!t) return;
    if (t->en && std::find(out.begin(), out.end(), t->en) == out.end()) out.push_back(t->en);
    for (auto& e : t->elems) self(e, self);
  };
  for (auto& a : atoms(s)) {
    for (auto& p : a->props) {
      add(p.codomain, add);
      for (auto& q : p.params) add(q, add);
    }
    for (auto& g : a->stages) {
      for (auto& v : g.vals) add(v.type, add);
      for (auto& v : g.term.args) add(v.type, add);
    }
  }
  return out;
}

SyncCriterion resolveCriterion(const CriterionAst& c, const System& sub) {
  auto side = [&](const QPropAst& q) {
    const AtomicStructure* a = findAtom(sub, q.comp);
    if (!a) fault(q.pos, "unknown component " + q.comp);
    const PropertyDef* p = a->findProp(q.name);
    if (!p) fault(q.pos, "component " + q.comp + " has no property " + q.name);
    if (p->params.size() != q.args.size())
      fault(q.pos, q.comp + "$" + q.name + " takes " + std::to_string(p->params.size()) + " arguments");
    QualifiedProp out{q.comp, q.name, {}};
    auto enums = systemEnums(sub);
    for (size_t i = 0; i < q.args.size(); ++i) out.params.push_back(constArg(*q.args[i], p->params[i], enums));
    return out;
  };
  return SyncCriterion{side(c.left), side(c.right)};
}

}  // namespace

Model build_model(const SpecFile& spec, size_t bound) {
  Model m;
  m.spec = spec;
  const TypeEnv shared = sharedEnv(spec);
  auto declare = [&](const std::string& name, const Pos& p) {
    if (m.systems.count(name)) fault(p, "duplicate system name " + name);
    m.names.push_back(name);
  };
  for (auto& [item, idx] : m.spec.order) {
    if (item == SpecFile::Item::System) {
      const SystemAst& s = m.spec.systems[idx];
      declare(s.name, s.pos);
      m.systems[s.name] = makeLeaf(elaborateIR(checkSystem(shared, cloneTarget(m.spec, s), s.name), bound));
    } else if (item == SpecFile::Item::Compose) {
      const ComposeAst& c = m.spec.composes[idx];
      declare(c.name, c.pos);
      std::vector<SystemRef> kids;
      for (auto& n : c.comps) {
        auto it = m.systems.find(n);
        if (it == m.systems.end()) fault(c.pos, "unknown component " + n + " (declare it before " + c.name + ")");
        kids.push_back(it->second);
      }
      auto probe = makeNode(c.name, kids, {});
      std::vector<SyncCriterion> crit;
      for (auto& k : c.criteria) crit.push_back(resolveCriterion(k, *probe));
      auto node = makeNode(c.name, kids, crit);
      auto diags = check_suitability(*node);
      if (!diags.empty()) fault(c.pos, diags.front());
      m.systems[c.name] = node;
    }
  }
  for (auto& a : m.spec.ags)
    if (!m.systems.count(a.system)) fault(a.pos, "unknown system " + a.system);
  for (auto& p : m.spec.proofs) {
    if (!m.systems.count(p.system)) fault(p.pos, "unknown system " + p.system);
    const System& sys = *m.systems[p.system];
    for (auto& o : p.obligations) {
      bool found = false;
      for (auto& c : sys.children) found = found || c->name == o.component;
      if (!found) fault(o.pos, o.component + " is not a direct component of " + p.system);
    }
  }
  return m;
}

Model load_model(const std::string& text, size_t bound) { return build_model(parse_spec(text), bound); }

Model load_model_file(const std::string& path, size_t bound) { return build_model(parse_spec_file(path), bound); }

// ---- formulas ----

namespace {

FormulaPtr convert(const FAst& f, const Scope& s) {
  using Op = FAst::Op;
  auto k = [&](size_t i) { return convert(*f.kids[i], s); };
  switch (f.op) {
    case Op::True: return fTrue();
    case Op::False: return fFalse();
    case Op::Atom: {
      Checker ck;
      ExprPtr lhs = cloneExpr(*f.lhs);
      if (!f.rhs) {
        TypeRef t = ck.check(*lhs, s);
        if (!isBool(t)) fault(f.pos, "bare term " + printExpr(*lhs) + " is not bool; compare it with ==");
        auto rhs = Expr::boolLit(true);
        rhs->type = ValueType::boolean();
        return fAtom(makeAtom(lhs, Rel::Eq, rhs));
      }
      ExprPtr rhs = cloneExpr(*f.rhs);
      auto [ta, tb] = ck.checkPair(*lhs, *rhs, s);
      if (!compatibleTypes(ta, tb)) fault(f.pos, "atom compares " + ta->str() + " with " + tb->str());
      return fAtom(makeAtom(lhs, Rel::Eq, rhs));
    }
    case Op::Not: return fNot(k(0));
    case Op::And: return fAnd(k(0), k(1));
    case Op::Or: return fOr(k(0), k(1));
    case Op::Implies: return fImplies(k(0), k(1));
    case Op::Iff: return fIff(k(0), k(1));
    case Op::Until: return fUntil(k(0), k(1));
    case Op::WeakUntil: return fWeakUntil(k(0), k(1));
    case Op::Release: return fRelease(k(0), k(1));
    case Op::Always: return fAlways(k(0));
    case Op::Eventually: return fEventually(k(0));
  }
  fault(f.pos, "bad formula");
}

}  // namespace

FormulaPtr resolve_formula(const FAst& f, const System& scope) {
  Scope s;
  s.enums = systemEnums(scope);
  auto all = atoms(scope);
  s.prop = [all](Expr& e, bool explicitRef) -> TypeRef {
    const AtomicStructure* owner = nullptr;
    const PropertyDef* def = nullptr;
    if (!e.comp.empty()) {
      for (auto& a : all)
        if (a->name == e.comp) owner = a.get();
      if (!owner) fault(e.pos, "unknown component " + e.comp);
      def = owner->findProp(e.name);
      if (!def) fault(e.pos, "component " + e.comp + " has no property " + e.name);
    } else {
      for (auto& a : all)
        if (auto* p = a->findProp(e.name)) {
          if (owner) fault(e.pos, "property " + e.name + " is ambiguous; qualify it as COMPONENT$" + e.name);
          owner = a.get();
          def = p;
        }
      if (!owner) {
        if (explicitRef) fault(e.pos, "unknown property " + e.name);
        return nullptr;
      }
    }
    if (def->params.size() != e.args.size())
      fault(e.pos, owner->name + "$" + e.name + " takes " + std::to_string(def->params.size()) + " arguments");
    QualifiedProp q{owner->name, e.name, {}};
    std::vector<EnumRef> enums;
    for (auto& t : def->params)
      if (t->en) enums.push_back(t->en);
    for (size_t i = 0; i < e.args.size(); ++i) q.params.push_back(constArg(*e.args[i], def->params[i], enums));
    e.ref = Expr::Ref::Prop;
    e.prop = q;
    return def->codomain;
  };
  return convert(f, s);
}

FormulaPtr resolve_formula(const FAst& f, const PlainStructure& scope) {
  Scope s;
  for (auto& t : scope.propTypes)
    if (t && t->en && std::find(s.enums.begin(), s.enums.end(), t->en) == s.enums.end()) s.enums.push_back(t->en);
  const PlainStructure* ps = &scope;
  s.prop = [ps](Expr& e, bool explicitRef) -> TypeRef {
    std::string args;
    if (!e.args.empty()) {
      args = "(";
      for (size_t i = 0; i < e.args.size(); ++i) {
        std::string a;
        for (char c : printExpr(*e.args[i]))
          if (c != ' ') a += c;
        args += (i ? "," : "") + a;
      }
      args += ")";
    }
    int found = -1;
    for (size_t k = 0; k < ps->propKeys.size(); ++k) {
      const auto& q = ps->propKeys[k];
      if (q.name != e.name || (!e.comp.empty() && q.component != e.comp)) continue;
      if (q.key() != q.component + "$" + e.name + args) continue;
      if (found >= 0) fault(e.pos, "property " + e.name + " is ambiguous; qualify it");
      found = static_cast<int>(k);
    }
    if (found < 0) {
      if (explicitRef) fault(e.pos, "unknown property " + printExpr(e));
      return nullptr;
    }
    e.ref = Expr::Ref::Prop;
    e.prop = ps->propKeys[static_cast<size_t>(found)];
    return ps->propTypes[static_cast<size_t>(found)];
  };
  return convert(f, s);
}

FormulaPtr parse_formula(const std::string& text, const System& scope) {
  return resolve_formula(*parse_formula_ast(text), scope);
}

FormulaPtr parse_formula(const std::string& text, const PlainStructure& scope) {
  return resolve_formula(*parse_formula_ast(text), scope);
}

}  // namespace sv
