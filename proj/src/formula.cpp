#include "syncverif/formula.hpp"

#include <functional>

namespace sv {

namespace {

const char* relText(Rel r) {
  switch (r) {
    case Rel::Eq: return " == ";
    case Rel::Lt: return " < ";
    case Rel::Le: return " <= ";
    case Rel::Ne: return " != ";
  }
  return " ? ";
}

FormulaPtr mk(Formula::Op op, FormulaPtr a = nullptr, FormulaPtr b = nullptr) {
  auto f = std::make_shared<Formula>();
  f->op = op;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

}  // namespace

AtomRef makeAtom(ExprPtr lhs, Rel rel, ExprPtr rhs) {
  auto a = std::make_shared<Atom>();
  a->lhs = std::move(lhs);
  a->rel = rel;
  a->rhs = std::move(rhs);
  auto side = [](const Expr& e) {
    std::string s = printExpr(e);
    // comparisons inside an atom side are parenthesized so keys stay unambiguous
    using Op = Expr::Op;
    switch (e.op) {
      case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::In:
      case Op::And: case Op::Or: case Op::Not: case Op::Ite:
        return "(" + s + ")";
      default: return s;
    }
  };
  a->key = side(*a->lhs) + relText(rel) + side(*a->rhs);
  return a;
}

bool evalAtom(const Atom& a, const EvalEnv& env) {
  Value l = evalExpr(*a.lhs, env), r = evalExpr(*a.rhs, env);
  switch (a.rel) {
    case Rel::Eq: return l == r;
    case Rel::Ne: return l != r;
    case Rel::Lt: return l.n < r.n;
    case Rel::Le: return l.n <= r.n;
  }
  return false;
}

FormulaPtr fTrue() {
  static const FormulaPtr t = mk(Formula::Op::True);
  return t;
}
FormulaPtr fFalse() {
  static const FormulaPtr f = mk(Formula::Op::False);
  return f;
}
FormulaPtr fAtom(AtomRef a) {
  auto f = std::make_shared<Formula>();
  f->op = Formula::Op::Atom;
  f->atom = std::move(a);
  return f;
}
FormulaPtr fNot(FormulaPtr a) { return mk(Formula::Op::Not, std::move(a)); }
FormulaPtr fAnd(FormulaPtr a, FormulaPtr b) { return mk(Formula::Op::And, std::move(a), std::move(b)); }
FormulaPtr fOr(FormulaPtr a, FormulaPtr b) { return mk(Formula::Op::Or, std::move(a), std::move(b)); }
FormulaPtr fUntil(FormulaPtr a, FormulaPtr b) { return mk(Formula::Op::Until, std::move(a), std::move(b)); }
FormulaPtr fRelease(FormulaPtr a, FormulaPtr b) { return mk(Formula::Op::Release, std::move(a), std::move(b)); }
FormulaPtr fImplies(FormulaPtr a, FormulaPtr b) { return fOr(fNot(std::move(a)), std::move(b)); }
FormulaPtr fIff(FormulaPtr a, FormulaPtr b) { return fAnd(fImplies(a, b), fImplies(b, a)); }
FormulaPtr fEventually(FormulaPtr a) { return fUntil(fTrue(), std::move(a)); }
FormulaPtr fAlways(FormulaPtr a) { return fRelease(fFalse(), std::move(a)); }
FormulaPtr fWeakUntil(FormulaPtr a, FormulaPtr b) { return fRelease(b, fOr(a, b)); }

FormulaPtr fAndAll(const std::vector<FormulaPtr>& xs) {
  if (xs.empty()) return fTrue();
  FormulaPtr r = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) r = fAnd(r, xs[i]);
  return r;
}

namespace {

FormulaPtr nnfPos(const FormulaPtr& f);

FormulaPtr nnfNeg(const FormulaPtr& f) {
  using Op = Formula::Op;
  switch (f->op) {
    case Op::True: return fFalse();
    case Op::False: return fTrue();
    case Op::Atom: return fNot(f);
    case Op::Not: return nnfPos(f->a);
    case Op::And: return fOr(nnfNeg(f->a), nnfNeg(f->b));
    case Op::Or: return fAnd(nnfNeg(f->a), nnfNeg(f->b));
    case Op::Until: return fRelease(nnfNeg(f->a), nnfNeg(f->b));
    case Op::Release: return fUntil(nnfNeg(f->a), nnfNeg(f->b));
  }
  return f;
}

FormulaPtr nnfPos(const FormulaPtr& f) {
  using Op = Formula::Op;
  switch (f->op) {
    case Op::True:
    case Op::False:
    case Op::Atom: return f;
    case Op::Not: return nnfNeg(f->a);
    case Op::And: return fAnd(nnfPos(f->a), nnfPos(f->b));
    case Op::Or: return fOr(nnfPos(f->a), nnfPos(f->b));
    case Op::Until: return fUntil(nnfPos(f->a), nnfPos(f->b));
    case Op::Release: return fRelease(nnfPos(f->a), nnfPos(f->b));
  }
  return f;
}

}  // namespace

FormulaPtr nnf(const FormulaPtr& f) { return nnfPos(f); }

int depth(const Formula& f) {
  switch (f.op) {
    case Formula::Op::True:
    case Formula::Op::False:
    case Formula::Op::Atom: return 0;
    case Formula::Op::Not: return 1 + depth(*f.a);
    default: return 1 + std::max(depth(*f.a), depth(*f.b));
  }
}

std::string printFormula(const Formula& f) {
  using Op = Formula::Op;
  switch (f.op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom: return "(" + f.atom->key + ")";
    case Op::Not: return "~" + printFormula(*f.a);
    case Op::And: return "(" + printFormula(*f.a) + " /\\ " + printFormula(*f.b) + ")";
    case Op::Or: return "(" + printFormula(*f.a) + " \\/ " + printFormula(*f.b) + ")";
    case Op::Until:
      if (f.a->op == Op::True) return "<>" + printFormula(*f.b);
      return "(" + printFormula(*f.a) + " U " + printFormula(*f.b) + ")";
    case Op::Release:
      if (f.a->op == Op::False) return "[]" + printFormula(*f.b);
      return "(" + printFormula(*f.a) + " R " + printFormula(*f.b) + ")";
  }
  return "?";
}

bool sameFormula(const Formula& a, const Formula& b) {
  if (a.op != b.op) return false;
  if (a.op == Formula::Op::Atom) return a.atom->key == b.atom->key;
  if (a.a && !sameFormula(*a.a, *b.a)) return false;
  if (a.b && !sameFormula(*a.b, *b.b)) return false;
  return true;
}

std::vector<AtomRef> formulaAtoms(const Formula& f) {
  std::vector<AtomRef> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.op == Formula::Op::Atom) {
      for (auto& a : out)
        if (a->key == g.atom->key) return;
      out.push_back(g.atom);
      return;
    }
    if (g.a) walk(*g.a);
    if (g.b) walk(*g.b);
  };
  walk(f);
  return out;
}

std::string printFAst(const FAst& f) {
  using Op = FAst::Op;
  auto k = [&](size_t i) { return printFAst(*f.kids[i]); };
  switch (f.op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Atom:
      if (f.rhs) return "(" + printExpr(*f.lhs) + " == " + printExpr(*f.rhs) + ")";
      return "(" + printExpr(*f.lhs) + ")";
    case Op::Not: return "~" + k(0);
    case Op::Always: return "[]" + k(0);
    case Op::Eventually: return "<>" + k(0);
    case Op::And: return "(" + k(0) + " /\\ " + k(1) + ")";
    case Op::Or: return "(" + k(0) + " \\/ " + k(1) + ")";
    case Op::Implies: return "(" + k(0) + " -> " + k(1) + ")";
    case Op::Iff: return "(" + k(0) + " <-> " + k(1) + ")";
    case Op::Until: return "(" + k(0) + " U " + k(1) + ")";
    case Op::WeakUntil: return "(" + k(0) + " W " + k(1) + ")";
    case Op::Release: return "(" + k(0) + " R " + k(1) + ")";
  }
  return "?";
}

bool sameFAst(const FAst& a, const FAst& b) {
  if (a.op != b.op || a.kids.size() != b.kids.size()) return false;
  if (a.op == FAst::Op::Atom) {
    if (!sameExpr(*a.lhs, *b.lhs)) return false;
    if (!a.rhs != !b.rhs) return false;
    if (a.rhs && !sameExpr(*a.rhs, *b.rhs)) return false;
  }
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (!sameFAst(*a.kids[i], *b.kids[i])) return false;
  return true;
}

}  // namespace sv
