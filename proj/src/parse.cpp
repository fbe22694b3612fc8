#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "syncverif/dsl.hpp"

namespace sv {

namespace {

struct Tok {
  enum class K { Id, Int, Str, Sym, End };
  K k = K::End;
  std::string s;
  int64_t v = 0;
  Pos pos;
};

const char* kSymbols[] = {"<->", "[]", "<>", "->", "/\\", "\\/", "|>", "||", "==", "!=", "<=", ">=", ":=",
                          "=>",  "..", "<",  ">",  "=",  "~",   "(",  ")",  "{",  "}",  ",",  ";",  ":",
                          ".",   "+",  "-",  "#",  "$"};

bool upperish(const std::string& s) {
  for (char c : s)
    if (std::islower(static_cast<unsigned char>(c))) return false;
  return !s.empty();
}

std::vector<Tok> lex(const std::string& text, const std::string& file) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto fail = [&](const std::string& m) -> void {
    throw InputError(file + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + m);
  };
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') adv(1);
      continue;
    }
    Tok t;
    t.pos = {line, col};
    if (alnum(c)) {
      size_t j = i;
      while (j < text.size() && alnum(text[j])) ++j;
      std::string w = text.substr(i, j - i);
      bool digits = true;
      for (char d : w) digits = digits && std::isdigit(static_cast<unsigned char>(d));
      if (digits) {
        t.k = Tok::K::Int;
        t.s = w;
        try {
          t.v = std::stoll(w);
        } catch (...) {
          fail("integer literal out of range");
        }
        adv(w.size());
        out.push_back(t);
        continue;
      }
      // upper-case names may contain inner hyphens (S-TRAIN1, RIVER-W-PREV)
      while (upperish(w) && j + 1 < text.size() && text[j] == '-' &&
             std::isupper(static_cast<unsigned char>(text[j + 1]))) {
        size_t k = j + 1;
        while (k < text.size() && alnum(text[k])) ++k;
        std::string part = text.substr(j + 1, k - j - 1);
        if (!upperish(part)) break;
        w += "-" + part;
        j = k;
      }
      t.k = Tok::K::Id;
      t.s = w;
      adv(j - i);
      out.push_back(t);
      continue;
    }
    if (c == '"') {
      size_t j = i + 1;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
      if (j >= text.size() || text[j] != '"') fail("unterminated string");
      t.k = Tok::K::Str;
      t.s = text.substr(i + 1, j - i - 1);
      adv(j + 1 - i);
      out.push_back(t);
      continue;
    }
    bool matched = false;
    for (const char* s : kSymbols) {
      size_t n = std::char_traits<char>::length(s);
      if (text.compare(i, n, s) == 0) {
        t.k = Tok::K::Sym;
        t.s = s;
        adv(n);
        out.push_back(t);
        matched = true;
        break;
      }
    }
    if (!matched) fail(std::string("unexpected character '") + c + "'");
  }
  Tok e;
  e.pos = {line, col};
  out.push_back(e);
  return out;
}

const std::set<std::string> kReserved = {"true", "false", "and", "or", "not", "in", "if", "then", "else"};

class Parser {
 public:
  Parser(std::vector<Tok> toks, std::string file) : t_(std::move(toks)), file_(std::move(file)) {}

  SpecFile spec() {
    SpecFile s;
    while (!atEnd()) {
      if (kw("shared")) {
        next();
        expectSym("{");
        while (!sym("}")) {
          if (kw("enum")) s.sharedEnums.push_back(enumDecl());
          else if (kw("type")) s.sharedTypes.push_back(typeDecl());
          else fail("expected enum or type declaration");
        }
        next();
        optSym(";");
      } else if (kw("import")) {
        next();
        if (cur().k != Tok::K::Str) fail("expected quoted file name");
        s.imports.push_back(next().s);
        expectSym(";");
        s.order.push_back({SpecFile::Item::Import, s.imports.size() - 1});
      } else if (kw("system")) {
        s.systems.push_back(systemDecl());
        s.order.push_back({SpecFile::Item::System, s.systems.size() - 1});
      } else if (kw("compose") && peekSym(1, "-")) {
        next();
        next();
        if (!kw("proof")) fail("expected compose-proof");
        next();
        s.proofs.push_back(proofDecl());
        s.order.push_back({SpecFile::Item::Proof, s.proofs.size() - 1});
      } else if (kw("compose")) {
        s.composes.push_back(composeDecl());
        s.order.push_back({SpecFile::Item::Compose, s.composes.size() - 1});
      } else if (kw("ag")) {
        Pos p = next().pos;
        AgAst a;
        a.pos = p;
        a.system = ident("system name");
        expectSym(":");
        a.alpha = formula();
        expectSym("|>");
        a.gamma = formula();
        expectSym(";");
        s.ags.push_back(a);
        s.order.push_back({SpecFile::Item::Ag, s.ags.size() - 1});
      } else {
        fail("expected shared, import, system, compose, compose-proof or ag");
      }
    }
    return s;
  }

  FAstPtr formulaOnly() {
    auto f = formula();
    if (!atEnd()) fail("unexpected trailing input in formula");
    return f;
  }

 private:
  std::vector<Tok> t_;
  std::string file_;
  size_t i_ = 0;

  const Tok& cur() const { return t_[i_]; }
  const Tok& at(size_t k) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  bool atEnd() const { return cur().k == Tok::K::End; }
  Tok next() { return atEnd() ? cur() : t_[i_++]; }
  bool sym(const char* s) const { return cur().k == Tok::K::Sym && cur().s == s; }
  bool peekSym(size_t k, const char* s) const { return at(k).k == Tok::K::Sym && at(k).s == s; }
  bool kw(const char* s) const { return cur().k == Tok::K::Id && cur().s == s; }
  bool optSym(const char* s) {
    if (!sym(s)) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const std::string& m) const {
    std::string found = atEnd() ? "end of input" : "'" + cur().s + "'";
    throw InputError(file_ + ":" + std::to_string(cur().pos.line) + ":" + std::to_string(cur().pos.col) +
                     ": " + m + " (found " + found + ")");
  }
  void expectSym(const char* s) {
    if (!optSym(s)) fail(std::string("expected '") + s + "'");
  }
  void expectKw(const char* s) {
    if (!kw(s)) fail(std::string("expected '") + s + "'");
    next();
  }
  std::string ident(const char* what) {
    if (cur().k != Tok::K::Id || kReserved.count(cur().s)) fail(std::string("expected ") + what);
    return next().s;
  }
  int64_t signedInt() {
    bool neg = optSym("-");
    if (cur().k != Tok::K::Int) fail("expected integer");
    int64_t v = next().v;
    return neg ? -v : v;
  }

  EnumAst enumDecl() {
    EnumAst e;
    e.pos = next().pos;
    e.name = ident("enum name");
    expectSym("{");
    do {
      e.symbols.push_back(ident("enum symbol"));
    } while (optSym(","));
    expectSym("}");
    optSym(";");
    return e;
  }

  TypeDefAst typeDecl() {
    TypeDefAst d;
    d.pos = next().pos;
    d.name = ident("type name");
    expectSym("=");
    d.type = type();
    expectSym(";");
    return d;
  }

  TypeAst type() {
    TypeAst t;
    t.pos = cur().pos;
    if (kw("bool")) {
      next();
      t.kind = TypeAst::Kind::Bool;
    } else if (kw("set")) {
      next();
      expectKw("of");
      t.kind = TypeAst::Kind::Set;
      t.name = ident("enum name");
    } else if (sym("(")) {
      next();
      t.kind = TypeAst::Kind::Tuple;
      do {
        t.elems.push_back(type());
      } while (optSym(","));
      expectSym(")");
    } else if (cur().k == Tok::K::Int || sym("-")) {
      t.kind = TypeAst::Kind::Range;
      t.lo = signedInt();
      expectSym("..");
      t.hi = signedInt();
    } else {
      t.kind = TypeAst::Kind::Named;
      t.name = ident("type");
    }
    return t;
  }

  std::vector<ParamAst> params() {
    std::vector<ParamAst> ps;
    expectSym("(");
    if (!sym(")")) {
      do {
        ParamAst p;
        p.name = ident("parameter name");
        expectSym(":");
        p.type = type();
        ps.push_back(std::move(p));
      } while (optSym(","));
    }
    expectSym(")");
    return ps;
  }

  SystemAst systemDecl() {
    SystemAst s;
    s.pos = next().pos;
    s.name = ident("system name");
    if (optSym("=")) {
      s.cloneOf = ident("system name");
      expectSym(";");
      return s;
    }
    expectSym("{");
    while (!optSym("}")) {
      if (kw("enum")) {
        s.enums.push_back(enumDecl());
      } else if (kw("type")) {
        s.types.push_back(typeDecl());
      } else if (kw("var")) {
        VarAst v;
        v.pos = next().pos;
        v.name = ident("variable name");
        expectSym(":");
        v.type = type();
        expectSym("=");
        v.init = expr();
        expectSym(";");
        s.vars.push_back(std::move(v));
      } else if (kw("rule")) {
        s.rules.push_back(ruleDecl());
      } else if (kw("prop")) {
        s.props.push_back(propDecl());
      } else {
        fail("expected enum, type, var, rule or prop");
      }
    }
    optSym(";");
    return s;
  }

  RuleAst ruleDecl() {
    RuleAst r;
    r.pos = next().pos;
    r.name = ident("rule name");
    r.params = sym("(") ? params() : std::vector<ParamAst>{};
    expectSym(":");
    if (kw("guard")) {
      next();
      r.guard = expr();
    } else {
      r.guard = Expr::boolLit(true);
    }
    expectKw("label");
    if (cur().k != Tok::K::Id) fail("expected transition name");
    r.label = next().s;
    if (optSym("(")) {
      if (!sym(")")) {
        do {
          r.labelArgs.push_back(expr());
        } while (optSym(","));
      }
      expectSym(")");
    }
    if (kw("update")) {
      next();
      do {
        std::string v = ident("variable name");
        expectSym(":=");
        r.updates.push_back({v, expr()});
      } while (optSym(","));
    }
    expectSym(";");
    return r;
  }

  PropAst propDecl() {
    PropAst p;
    p.pos = next().pos;
    p.name = ident("property name");
    if (sym("(")) p.params = params();
    if (optSym(":")) {
      p.hasType = true;
      p.type = type();
    }
    expectSym("=");
    if (kw("match")) {
      next();
      expectKw("stage");
      expectSym("{");
      p.form = PropAst::Form::Match;
      while (!kw("default")) {
        CaseAst c;
        c.pos = cur().pos;
        if (kw("state")) {
          next();
          c.isState = true;
        } else if (kw("trans")) {
          next();
          if (cur().k != Tok::K::Id) fail("expected transition name");
          c.trans = next().s;
          if (optSym("(")) {
            if (!sym(")")) {
              do {
                c.binders.push_back(ident("binder"));
              } while (optSym(","));
            }
            expectSym(")");
          } else {
            c.anyArgs = true;
          }
        } else {
          fail("expected state, trans or default case");
        }
        expectSym("=>");
        c.body = expr();
        expectSym(";");
        p.cases.push_back(std::move(c));
      }
      next();
      expectSym("=>");
      p.deflt = expr();
      optSym(";");
      expectSym("}");
    } else {
      ExprPtr e = expr();
      if (kw("at")) {
        next();
        expectKw("trans");
        if (cur().k != Tok::K::Id) fail("expected transition name");
        p.form = PropAst::Form::At;
        p.atValue = e;
        p.atTrans = next().s;
        expectKw("else");
        p.deflt = expr();
      } else {
        p.form = PropAst::Form::Plain;
        p.deflt = e;
      }
    }
    expectSym(";");
    return p;
  }

  QPropAst qprop() {
    QPropAst q;
    q.pos = cur().pos;
    q.comp = ident("component name");
    expectSym("$");
    q.name = ident("property name");
    if (optSym("(")) {
      do {
        q.args.push_back(expr());
      } while (optSym(","));
      expectSym(")");
    }
    return q;
  }

  ComposeAst composeDecl() {
    ComposeAst c;
    c.pos = next().pos;
    c.name = ident("composition name");
    expectSym("=");
    do {
      c.comps.push_back(ident("component name"));
    } while (optSym("||"));
    if (kw("on")) {
      next();
      do {
        CriterionAst k;
        k.left = qprop();
        expectSym("==");
        k.right = qprop();
        c.criteria.push_back(std::move(k));
      } while (optSym("/\\"));
    }
    expectSym(";");
    return c;
  }

  ProofAst proofDecl() {
    ProofAst p;
    p.pos = cur().pos;
    p.name = ident("proof name");
    expectKw("for");
    p.system = ident("system name");
    expectSym("{");
    bool haveTarget = false;
    while (!optSym("}")) {
      Pos pos = cur().pos;
      std::string who = ident("component name or target");
      expectSym(":");
      FAstPtr a = formula();
      expectSym("|>");
      FAstPtr g = formula();
      if (who == "target") {
        p.alpha = a;
        p.gamma = g;
        haveTarget = true;
      } else {
        ObligationAst o;
        o.pos = pos;
        o.component = who;
        o.alpha = a;
        o.gamma = g;
        expectKw("mode");
        std::string m = ident("discharge mode");
        if (m == "safety") o.mode = DischargeMode::Safety;
        else if (m == "fairness") o.mode = DischargeMode::Fairness;
        else if (m == "compound") o.mode = DischargeMode::Compound;
        else fail("mode must be safety, fairness or compound");
        p.obligations.push_back(std::move(o));
      }
      expectSym(";");
    }
    if (!haveTarget) fail("compose-proof needs a target statement");
    optSym(";");
    return p;
  }

  // ---- expressions ----

  ExprPtr mk(Expr::Op op, std::vector<ExprPtr> args, Pos p) { return Expr::make(op, std::move(args), p); }

  ExprPtr expr() {
    if (kw("if")) {
      Pos p = next().pos;
      ExprPtr c = expr();
      expectKw("then");
      ExprPtr a = expr();
      expectKw("else");
      ExprPtr b = expr();
      return mk(Expr::Op::Ite, {c, a, b}, p);
    }
    return orExpr();
  }

  ExprPtr orExpr() {
    ExprPtr l = andExpr();
    while (kw("or")) {
      Pos p = next().pos;
      l = mk(Expr::Op::Or, {l, andExpr()}, p);
    }
    return l;
  }

  ExprPtr andExpr() {
    ExprPtr l = notExpr();
    while (kw("and")) {
      Pos p = next().pos;
      l = mk(Expr::Op::And, {l, notExpr()}, p);
    }
    return l;
  }

  ExprPtr notExpr() {
    if (kw("not")) {
      Pos p = next().pos;
      return mk(Expr::Op::Not, {notExpr()}, p);
    }
    return cmpExpr();
  }

  ExprPtr cmpExpr() {
    ExprPtr l = addExpr();
    static const std::pair<const char*, Expr::Op> ops[] = {{"==", Expr::Op::Eq}, {"!=", Expr::Op::Ne},
                                                           {"<=", Expr::Op::Le}, {">=", Expr::Op::Ge},
                                                           {"<", Expr::Op::Lt},  {">", Expr::Op::Gt}};
    for (auto& [s, op] : ops)
      if (sym(s)) {
        Pos p = next().pos;
        return mk(op, {l, addExpr()}, p);
      }
    if (kw("in")) {
      Pos p = next().pos;
      return mk(Expr::Op::In, {l, addExpr()}, p);
    }
    return l;
  }

  ExprPtr addExpr() {
    ExprPtr l = unaryExpr();
    while (sym("+") || sym("-")) {
      Tok t = next();
      l = mk(t.s == "+" ? Expr::Op::Add : Expr::Op::Sub, {l, unaryExpr()}, t.pos);
    }
    return l;
  }

  ExprPtr unaryExpr() {
    if (sym("-")) {
      Pos p = next().pos;
      if (cur().k == Tok::K::Int) {
        auto e = Expr::intLit(-next().v);
        e->pos = p;
        return e;
      }
      return mk(Expr::Op::Neg, {unaryExpr()}, p);
    }
    if (sym("#")) {
      Pos p = next().pos;
      return mk(Expr::Op::Size, {unaryExpr()}, p);
    }
    return postfix();
  }

  ExprPtr postfix() {
    ExprPtr e = primary();
    while (sym(".") && at(1).k == Tok::K::Int) {
      Pos p = next().pos;
      auto x = mk(Expr::Op::Proj, {e}, p);
      x->ival = next().v;
      e = x;
    }
    return e;
  }

  ExprPtr primary() {
    Pos p = cur().pos;
    if (cur().k == Tok::K::Int) {
      auto e = Expr::intLit(next().v);
      e->pos = p;
      return e;
    }
    if (kw("true") || kw("false")) {
      auto e = Expr::boolLit(next().s == "true");
      e->pos = p;
      return e;
    }
    if (sym("(")) {
      next();
      std::vector<ExprPtr> xs{expr()};
      bool tuple = false;
      while (optSym(",")) {
        tuple = true;
        if (sym(")")) break;
        xs.push_back(expr());
      }
      expectSym(")");
      if (!tuple) return xs[0];
      return mk(Expr::Op::TupleLit, std::move(xs), p);
    }
    if (sym("{")) {
      next();
      std::vector<ExprPtr> xs;
      if (!sym("}")) {
        do {
          xs.push_back(expr());
        } while (optSym(","));
      }
      expectSym("}");
      return mk(Expr::Op::SetLit, std::move(xs), p);
    }
    if (cur().k == Tok::K::Id && !kReserved.count(cur().s)) {
      std::string n = next().s;
      std::string comp;
      if (optSym("$")) {
        comp = n;
        n = ident("property name");
      }
      if (!comp.empty() || sym("(")) {
        auto e = mk(Expr::Op::Prop, {}, p);
        e->comp = comp;
        e->name = n;
        if (optSym("(")) {
          if (!sym(")")) {
            do {
              e->args.push_back(expr());
            } while (optSym(","));
          }
          expectSym(")");
        }
        return e;
      }
      auto e = Expr::name_(n);
      e->pos = p;
      return e;
    }
    fail("expected expression");
  }

  // ---- formulas ----

  FAstPtr fmk(FAst::Op op, std::vector<FAstPtr> kids, Pos p) {
    auto f = std::make_shared<FAst>();
    f->op = op;
    f->kids = std::move(kids);
    f->pos = p;
    return f;
  }

  FAstPtr formula() { return fIff(); }

  FAstPtr fIff() {
    FAstPtr l = fImp();
    while (sym("<->")) {
      Pos p = next().pos;
      l = fmk(FAst::Op::Iff, {l, fImp()}, p);
    }
    return l;
  }

  FAstPtr fImp() {
    FAstPtr l = fOr();
    if (sym("->")) {
      Pos p = next().pos;
      return fmk(FAst::Op::Implies, {l, fImp()}, p);
    }
    return l;
  }

  FAstPtr fOr() {
    FAstPtr l = fAnd();
    while (sym("\\/")) {
      Pos p = next().pos;
      l = fmk(FAst::Op::Or, {l, fAnd()}, p);
    }
    return l;
  }

  FAstPtr fAnd() {
    FAstPtr l = fBin();
    while (sym("/\\")) {
      Pos p = next().pos;
      l = fmk(FAst::Op::And, {l, fBin()}, p);
    }
    return l;
  }

  FAstPtr fBin() {
    FAstPtr l = fUnary();
    if (kw("U") || kw("W") || kw("R")) {
      Tok t = next();
      FAst::Op op = t.s == "U" ? FAst::Op::Until : t.s == "W" ? FAst::Op::WeakUntil : FAst::Op::Release;
      return fmk(op, {l, fBin()}, t.pos);
    }
    return l;
  }

  FAstPtr fUnary() {
    Pos p = cur().pos;
    if (optSym("~")) return fmk(FAst::Op::Not, {fUnary()}, p);
    if (optSym("[]")) return fmk(FAst::Op::Always, {fUnary()}, p);
    if (optSym("<>")) return fmk(FAst::Op::Eventually, {fUnary()}, p);
    if (kw("X") && !peekSym(1, "$") && !exprContinuesAt(1)) fail("next operator unsupported");
    return fPrimary();
  }

  bool exprContinuesAt(size_t k) const {
    const Tok& t = at(k);
    if (t.k == Tok::K::Id) return t.s == "in" || t.s == "and" || t.s == "or";
    if (t.k != Tok::K::Sym) return false;
    static const std::set<std::string> ops = {"==", "!=", "<", "<=", ">", ">=", "+", "-", ".", "$", "("};
    return ops.count(t.s) > 0;
  }

  FAstPtr fPrimary() {
    Pos p = cur().pos;
    if ((kw("true") || kw("false")) && !exprContinuesAt(1)) {
      return fmk(next().s == "true" ? FAst::Op::True : FAst::Op::False, {}, p);
    }
    if (sym("(")) {
      size_t save = i_;
      try {
        next();
        FAstPtr f = formula();
        expectSym(")");
        if (!exprContinuesAt(0)) return f;
      } catch (const InputError&) {
      }
      i_ = save;
    }
    ExprPtr e = expr();
    auto f = fmk(FAst::Op::Atom, {}, p);
    if (e->op == Expr::Op::Eq) {
      f->lhs = e->args[0];
      f->rhs = e->args[1];
    } else {
      f->lhs = e;
    }
    return f;
  }
};

}  // namespace

SpecFile parse_spec(const std::string& text, const std::string& filename) {
  return Parser(lex(text, filename), filename).spec();
}

FAstPtr parse_formula_ast(const std::string& text) {
  return Parser(lex(text, "<formula>"), "<formula>").formulaOnly();
}

namespace {

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spliceInto(SpecFile& dst, SpecFile src) {
  for (auto& e : src.sharedEnums) dst.sharedEnums.push_back(std::move(e));
  for (auto& t : src.sharedTypes) dst.sharedTypes.push_back(std::move(t));
  for (auto& [item, idx] : src.order) {
    switch (item) {
      case SpecFile::Item::Import: break;
      case SpecFile::Item::System:
        dst.systems.push_back(std::move(src.systems[idx]));
        dst.order.push_back({item, dst.systems.size() - 1});
        break;
      case SpecFile::Item::Compose:
        dst.composes.push_back(std::move(src.composes[idx]));
        dst.order.push_back({item, dst.composes.size() - 1});
        break;
      case SpecFile::Item::Ag:
        dst.ags.push_back(std::move(src.ags[idx]));
        dst.order.push_back({item, dst.ags.size() - 1});
        break;
      case SpecFile::Item::Proof:
        dst.proofs.push_back(std::move(src.proofs[idx]));
        dst.order.push_back({item, dst.proofs.size() - 1});
        break;
    }
  }
}

SpecFile loadRec(const std::string& path, std::set<std::string>& seen) {
  if (!seen.insert(path).second) return {};
  SpecFile s = parse_spec(readFile(path), path);
  std::string dir;
  if (auto slash = path.find_last_of('/'); slash != std::string::npos) dir = path.substr(0, slash + 1);
  SpecFile out;
  for (auto& imp : s.imports) spliceInto(out, loadRec(imp.empty() || imp[0] == '/' ? imp : dir + imp, seen));
  s.imports.clear();
  spliceInto(out, std::move(s));
  return out;
}

}  // namespace

SpecFile parse_spec_file(const std::string& path) {
  std::set<std::string> seen;
  return loadRec(path, seen);
}

const char* modeName(DischargeMode m) {
  switch (m) {
    case DischargeMode::Safety: return "safety";
    case DischargeMode::Fairness: return "fairness";
    case DischargeMode::Compound: return "compound";
  }
  return "?";
}

// ---- printing ----

namespace {

std::string printType(const TypeAst& t) {
  switch (t.kind) {
    case TypeAst::Kind::Bool: return "bool";
    case TypeAst::Kind::Range: return std::to_string(t.lo) + ".." + std::to_string(t.hi);
    case TypeAst::Kind::Named: return t.name;
    case TypeAst::Kind::Set: return "set of " + t.name;
    case TypeAst::Kind::Tuple: {
      std::string s = "(";
      for (size_t i = 0; i < t.elems.size(); ++i) s += (i ? ", " : "") + printType(t.elems[i]);
      return s + ")";
    }
  }
  return "?";
}

std::string printParams(const std::vector<ParamAst>& ps) {
  std::string s = "(";
  for (size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].name + " : " + printType(ps[i].type);
  return s + ")";
}

std::string printArgs(const std::vector<ExprPtr>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + printExpr(*xs[i]);
  return s;
}

std::string printEnum(const EnumAst& e, const std::string& indent) {
  std::string s = indent + "enum " + e.name + " {";
  for (size_t i = 0; i < e.symbols.size(); ++i) s += (i ? ", " : "") + e.symbols[i];
  return s + "};\n";
}

std::string printQ(const QPropAst& q) {
  std::string s = q.comp + "$" + q.name;
  if (!q.args.empty()) s += "(" + printArgs(q.args) + ")";
  return s;
}

std::string printSystem(const SystemAst& s) {
  if (!s.cloneOf.empty()) return "system " + s.name + " = " + s.cloneOf + ";\n";
  std::string o = "system " + s.name + " {\n";
  for (auto& e : s.enums) o += printEnum(e, "  ");
  for (auto& t : s.types) o += "  type " + t.name + " = " + printType(t.type) + ";\n";
  for (auto& v : s.vars) o += "  var " + v.name + " : " + printType(v.type) + " = " + printExpr(*v.init) + ";\n";
  for (auto& r : s.rules) {
    o += "  rule " + r.name + printParams(r.params) + " : guard " + printExpr(*r.guard) + " label " + r.label + "(" +
         printArgs(r.labelArgs) + ")";
    if (!r.updates.empty()) {
      o += " update ";
      for (size_t i = 0; i < r.updates.size(); ++i)
        o += (i ? ", " : "") + r.updates[i].first + " := " + printExpr(*r.updates[i].second);
    }
    o += ";\n";
  }
  for (auto& p : s.props) {
    o += "  prop " + p.name;
    if (!p.params.empty()) o += printParams(p.params);
    if (p.hasType) o += " : " + printType(p.type);
    o += " = ";
    switch (p.form) {
      case PropAst::Form::Plain: o += printExpr(*p.deflt); break;
      case PropAst::Form::At:
        o += printExpr(*p.atValue) + " at trans " + p.atTrans + " else " + printExpr(*p.deflt);
        break;
      case PropAst::Form::Match:
        o += "match stage {\n";
        for (auto& c : p.cases) {
          o += "    ";
          if (c.isState) {
            o += "state";
          } else {
            o += "trans " + c.trans;
            if (!c.anyArgs) {
              o += "(";
              for (size_t i = 0; i < c.binders.size(); ++i) o += (i ? ", " : "") + c.binders[i];
              o += ")";
            }
          }
          o += " => " + printExpr(*c.body) + ";\n";
        }
        o += "    default => " + printExpr(*p.deflt) + ";\n  }";
        break;
    }
    o += ";\n";
  }
  return o + "}\n";
}

}  // namespace

std::string print_spec(const SpecFile& s) {
  std::string o;
  if (!s.sharedEnums.empty() || !s.sharedTypes.empty()) {
    o += "shared {\n";
    for (auto& e : s.sharedEnums) o += printEnum(e, "  ");
    for (auto& t : s.sharedTypes) o += "  type " + t.name + " = " + printType(t.type) + ";\n";
    o += "}\n";
  }
  for (auto& [item, idx] : s.order) {
    switch (item) {
      case SpecFile::Item::Import: o += "import \"" + s.imports[idx] + "\";\n"; break;
      case SpecFile::Item::System: o += printSystem(s.systems[idx]); break;
      case SpecFile::Item::Compose: {
        auto& c = s.composes[idx];
        o += "compose " + c.name + " =";
        for (size_t i = 0; i < c.comps.size(); ++i) o += (i ? " || " : " ") + c.comps[i];
        for (size_t i = 0; i < c.criteria.size(); ++i)
          o += (i ? "\n  /\\ " : "\n  on ") + printQ(c.criteria[i].left) + " == " + printQ(c.criteria[i].right);
        o += ";\n";
        break;
      }
      case SpecFile::Item::Ag: {
        auto& a = s.ags[idx];
        o += "ag " + a.system + " : " + printFAst(*a.alpha) + " |> " + printFAst(*a.gamma) + ";\n";
        break;
      }
      case SpecFile::Item::Proof: {
        auto& p = s.proofs[idx];
        o += "compose-proof " + p.name + " for " + p.system + " {\n";
        for (auto& ob : p.obligations)
          o += "  " + ob.component + " : " + printFAst(*ob.alpha) + " |> " + printFAst(*ob.gamma) + " mode " +
               modeName(ob.mode) + ";\n";
        o += "  target : " + printFAst(*p.alpha) + " |> " + printFAst(*p.gamma) + ";\n}\n";
        break;
      }
    }
  }
  return o;
}

bool sameSpec(const SpecFile& a, const SpecFile& b) { return print_spec(a) == print_spec(b); }

}  // namespace sv
