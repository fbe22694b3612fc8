#include "syncverif/ag.hpp"

#include <set>

#include "syncverif/sidecond.hpp"

namespace sv {

Verdict ag_check(const PlainStructure& subject, const FormulaPtr& alpha, const FormulaPtr& gamma) {
  return model_check(subject, fImplies(alpha, gamma));
}

Verdict ag_check(const System& subject, const FormulaPtr& alpha, const FormulaPtr& gamma, size_t bound) {
  return ag_check(split_compound(subject, bound), alpha, gamma);
}

namespace {

bool safetyNnf(const Formula& f) {
  using Op = Formula::Op;
  switch (f.op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
    case Op::Not: return true;  // nnf: negation only on atoms
    case Op::And:
    case Op::Or:
    case Op::Release: return safetyNnf(*f.a) && safetyNnf(*f.b);
    case Op::Until: return false;
  }
  return false;
}

}  // namespace

bool is_safety(const FormulaPtr& f) { return safetyNnf(*nnf(f)); }

const ConditionResult* ComposeReport::firstFailure() const {
  for (const auto& s : steps)
    if (!s.ok) return &s;
  return nullptr;
}

FormulaPtr criteria_invariant(const System& s) {
  std::vector<FormulaPtr> parts;
  constexpr size_t kMaxExpansion = 64;
  for (const auto& c : criteria(s)) {
    const AtomicStructure* la = findAtom(s, c.left.component);
    const AtomicStructure* ra = findAtom(s, c.right.component);
    if (!la || !ra) throw InputError("criterion " + c.str() + " refers to an unknown component");
    TypeRef lt = resolveProp(*la, c.left).codomain;
    TypeRef rt = resolveProp(*ra, c.right).codomain;
    std::string l = c.left.key(), r = c.right.key();
    if (lt->kind == ValueType::Kind::Bool) {
      parts.push_back(parse_formula("(" + l + " <-> " + r + ")", s));
      continue;
    }
    std::vector<std::string> vals;
    std::set<std::string> seen;
    bool small = true;
    for (const TypeRef& t : {lt, rt}) {
      std::vector<Value> dom;
      try {
        dom = domain(t, kMaxExpansion);
      } catch (const ResourceError&) {
        small = false;
        break;
      }
      for (const auto& v : dom)
        if (seen.insert(v.str()).second) vals.push_back(v.str());
    }
    if (small && vals.size() <= kMaxExpansion) {
      try {
        std::vector<FormulaPtr> eqs;
        for (const auto& v : vals) eqs.push_back(parse_formula("(" + l + " == " + v + " <-> " + r + " == " + v + ")", s));
        parts.push_back(fAndAll(eqs));
        continue;
      } catch (const InputError&) {
        // values without a surface literal fall back to the opaque equality atom
      }
    }
    parts.push_back(parse_formula(l + " == " + r, s));
  }
  return fAlways(fAndAll(parts));
}

ComposeReport ag_compose(const ObligationSet& obl, size_t bound) {
  ComposeReport rep;
  if (!obl.system) throw InputError("obligation set without a system");
  const System& sys = *obl.system;
  std::shared_ptr<const PlainStructure> split;
  auto compound = [&]() {
    if (!split) split = std::make_shared<const PlainStructure>(split_compound(sys, bound));
    return split;
  };
  std::optional<bool> fairCert;
  std::string fairDetail;

  std::vector<FormulaPtr> premises;
  for (size_t i = 0; i < obl.obligations.size(); ++i) {
    const auto& o = obl.obligations[i];
    FormulaPtr imp = fImplies(o.alpha, o.gamma);
    premises.push_back(imp);

    ConditionResult a;
    a.condition = "1a";
    a.component = o.component->name;
    a.index = i;
    auto comp = std::make_shared<const PlainStructure>(split_compound(*o.component, bound));
    Verdict v = ag_check(*comp, o.alpha, o.gamma);
    a.ok = v.holds;
    a.detail = printFormula(*o.alpha) + " |> " + printFormula(*o.gamma) + (v.holds ? " holds" : " fails");
    if (!v.holds) {
      a.trace = v.trace;
      a.traceStructure = comp;
    }
    rep.steps.push_back(a);

    ConditionResult b;
    b.condition = "1b";
    b.component = o.component->name;
    b.index = i;
    switch (o.mode) {
      case DischargeMode::Safety:
        b.ok = is_safety(imp);
        b.detail = b.ok ? "safety: syntactic fragment" : "safety: formula not certified as safety";
        break;
      case DischargeMode::Fairness:
        if (!fairCert) {
          auto dl = find_deadlocks(*compound());
          auto st = find_starvation(*compound());
          fairCert = dl.empty() && st.empty();
          fairDetail = std::to_string(dl.size()) + " deadlock and " + std::to_string(st.size()) + " starvation witnesses";
        }
        if (*fairCert) {
          b.ok = true;
          b.detail = "fairness: deadlock-free and fair (certified)";
        } else if (obl.assumeFairness) {
          b.ok = true;
          b.detail = "fairness: assumed by user, " + fairDetail + "; UNSOUND-IF-ASSUMPTION-FALSE";
        } else {
          b.ok = false;
          b.detail = "fairness: not certified, " + fairDetail;
        }
        break;
      case DischargeMode::Compound: {
        Verdict cv = model_check(*compound(), imp);
        b.ok = cv.holds;
        b.detail = std::string("compound: ") + (cv.holds ? "holds on the split compound" : "fails on the split compound");
        if (!cv.holds) {
          b.trace = cv.trace;
          b.traceStructure = compound();
        }
        break;
      }
    }
    rep.steps.push_back(b);
  }

  ConditionResult c;
  c.condition = "2";
  FormulaPtr inv = criteria_invariant(sys);
  rep.condition2 = fImplies(fAnd(fAndAll(premises), inv), fImplies(obl.alpha, obl.gamma));
  Validity val = check_validity(rep.condition2);
  c.ok = val.valid;
  c.detail = val.valid ? "premises imply the target" : "premises do not imply the target";
  if (!val.valid) c.countermodel = val;
  rep.steps.push_back(c);
  rep.notes.push_back("criteria enter the validity check as invariants (always-equal), not only at the initial stage");

  rep.derived = rep.firstFailure() == nullptr;
  return rep;
}

ObligationSet obligations_from_proof(const Model& m, const std::string& proof) {
  for (const auto& p : m.spec.proofs) {
    if (p.name != proof) continue;
    ObligationSet o;
    o.system = m.system(p.system);
    for (const auto& ob : p.obligations) {
      AgObligation a;
      a.component = m.system(ob.component);
      a.alpha = resolve_formula(*ob.alpha, *a.component);
      a.gamma = resolve_formula(*ob.gamma, *a.component);
      a.mode = ob.mode;
      o.obligations.push_back(std::move(a));
    }
    o.alpha = resolve_formula(*p.alpha, *o.system);
    o.gamma = resolve_formula(*p.gamma, *o.system);
    return o;
  }
  throw InputError("unknown compose-proof " + proof);
}

}  // namespace sv
