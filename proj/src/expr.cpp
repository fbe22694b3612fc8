#include "syncverif/expr.hpp"

#include <bit>

namespace sv {

ExprPtr Expr::make(Op op, std::vector<ExprPtr> args, Pos pos) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->args = std::move(args);
  e->pos = pos;
  return e;
}

ExprPtr Expr::boolLit(bool b) {
  auto e = make(Op::BoolLit);
  e->ival = b ? 1 : 0;
  return e;
}

ExprPtr Expr::intLit(int64_t v) {
  auto e = make(Op::IntLit);
  e->ival = v;
  return e;
}

ExprPtr Expr::name_(std::string n) {
  auto e = make(Op::Name);
  e->name = std::move(n);
  return e;
}

namespace {

[[noreturn]] void fault(const Expr& e, const std::string& msg) {
  throw InputError(std::to_string(e.pos.line) + ":" + std::to_string(e.pos.col) + ": " + msg);
}

Value evalName(const Expr& e, const EvalEnv& env) {
  switch (e.ref) {
    case Expr::Ref::Var:
      if (!env.vars) fault(e, "variable " + e.name + " is not available at a transition stage");
      return (*env.vars)[static_cast<size_t>(e.slot)];
    case Expr::Ref::Local:
      if (!env.locals) fault(e, "no binding for " + e.name);
      return (*env.locals)[static_cast<size_t>(e.slot)];
    case Expr::Ref::Const: return e.constant;
    case Expr::Ref::Prop:
      if (!env.prop) fault(e, "property " + e.prop.key() + " outside a formula context");
      return (*env.prop)(e.prop);
    case Expr::Ref::None: break;
  }
  fault(e, "unresolved name " + e.name);
}

}  // namespace

Value evalExpr(const Expr& e, const EvalEnv& env) {
  using Op = Expr::Op;
  auto arg = [&](size_t i) { return evalExpr(*e.args[i], env); };
  switch (e.op) {
    case Op::BoolLit: return Value::boolean(e.ival != 0);
    case Op::IntLit: return Value::integer(e.ival, e.type);
    case Op::Name:
    case Op::Prop: return evalName(e, env);
    case Op::SetLit: {
      uint64_t mask = 0;
      for (size_t i = 0; i < e.args.size(); ++i) mask |= uint64_t(1) << arg(i).n;
      Value v;
      v.type = e.type;
      v.n = static_cast<int64_t>(mask);
      return v;
    }
    case Op::TupleLit: {
      std::vector<Value> xs;
      for (size_t i = 0; i < e.args.size(); ++i) xs.push_back(arg(i));
      Value v;
      v.type = e.type;
      v.elems = std::move(xs);
      return v;
    }
    case Op::Proj: {
      Value t = arg(0);
      if (e.ival < 0 || static_cast<size_t>(e.ival) >= t.elems.size()) fault(e, "tuple projection out of range");
      return t.elems[static_cast<size_t>(e.ival)];
    }
    case Op::Not: return Value::boolean(!arg(0).asBool());
    case Op::Neg: return Value::integer(-arg(0).n);
    case Op::Size: return Value::integer(std::popcount(static_cast<uint64_t>(arg(0).n)));
    case Op::And: return Value::boolean(arg(0).asBool() && arg(1).asBool());
    case Op::Or: return Value::boolean(arg(0).asBool() || arg(1).asBool());
    case Op::Eq: return Value::boolean(arg(0) == arg(1));
    case Op::Ne: return Value::boolean(arg(0) != arg(1));
    case Op::Lt: return Value::boolean(arg(0).n < arg(1).n);
    case Op::Le: return Value::boolean(arg(0).n <= arg(1).n);
    case Op::Gt: return Value::boolean(arg(0).n > arg(1).n);
    case Op::Ge: return Value::boolean(arg(0).n >= arg(1).n);
    case Op::Add:
    case Op::Sub: {
      Value a = arg(0), b = arg(1);
      if (e.type && e.type->kind == ValueType::Kind::Set) {
        uint64_t x = static_cast<uint64_t>(a.n), y = static_cast<uint64_t>(b.n);
        Value v;
        v.type = e.type;
        v.n = static_cast<int64_t>(e.op == Op::Add ? (x | y) : (x & ~y));
        return v;
      }
      int64_t r;
      bool ovf = e.op == Op::Add ? __builtin_add_overflow(a.n, b.n, &r)
                                 : __builtin_sub_overflow(a.n, b.n, &r);
      if (ovf) fault(e, "integer overflow");
      return Value::integer(r);
    }
    case Op::In: {
      Value x = arg(0), s = arg(1);
      return Value::boolean((static_cast<uint64_t>(s.n) >> x.n) & 1u);
    }
    case Op::Ite: return arg(0).asBool() ? arg(1) : arg(2);
  }
  fault(e, "bad expression");
}

namespace {

int prec(const Expr& e) {
  using Op = Expr::Op;
  switch (e.op) {
    case Op::Ite: return 0;
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Not: return 3;
    case Op::Eq: case Op::Ne: case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: case Op::In: return 4;
    case Op::Add: case Op::Sub: return 5;
    case Op::Neg: case Op::Size: return 6;
    case Op::Proj: return 7;
    default: return 8;
  }
}

const char* binop(Expr::Op op) {
  using Op = Expr::Op;
  switch (op) {
    case Op::And: return " and ";
    case Op::Or: return " or ";
    case Op::Eq: return " == ";
    case Op::Ne: return " != ";
    case Op::Lt: return " < ";
    case Op::Le: return " <= ";
    case Op::Gt: return " > ";
    case Op::Ge: return " >= ";
    case Op::Add: return " + ";
    case Op::Sub: return " - ";
    case Op::In: return " in ";
    default: return " ? ";
  }
}

std::string wrap(const Expr& e, int minPrec) {
  std::string s = printExpr(e);
  return prec(e) < minPrec ? "(" + s + ")" : s;
}

std::string joinArgs(const std::vector<ExprPtr>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += printExpr(*xs[i]);
  }
  return s;
}

}  // namespace

std::string printExpr(const Expr& e) {
  using Op = Expr::Op;
  if ((e.op == Op::Name || e.op == Op::Prop) && e.ref == Expr::Ref::Prop) return e.prop.key();
  switch (e.op) {
    case Op::BoolLit: return e.ival ? "true" : "false";
    case Op::IntLit: return std::to_string(e.ival);
    case Op::Name: return e.name;
    case Op::Prop: {
      std::string s = e.comp.empty() ? e.name : e.comp + "$" + e.name;
      if (!e.args.empty()) s += "(" + joinArgs(e.args) + ")";
      return s;
    }
    case Op::SetLit: return "{" + joinArgs(e.args) + "}";
    case Op::TupleLit: return "(" + joinArgs(e.args) + (e.args.size() == 1 ? ",)" : ")");
    case Op::Proj: return wrap(*e.args[0], 7) + "." + std::to_string(e.ival);
    case Op::Not: return "not " + wrap(*e.args[0], 3);
    case Op::Neg: return "-" + wrap(*e.args[0], 6);
    case Op::Size: return "#" + wrap(*e.args[0], 6);
    case Op::Ite:
      return "if " + printExpr(*e.args[0]) + " then " + printExpr(*e.args[1]) + " else " +
             wrap(*e.args[2], 0);
    default: {
      int p = prec(e);
      // comparisons are non-associative; arithmetic and boolean ops associate left
      int lp = p == 4 ? p + 1 : p;
      return wrap(*e.args[0], lp) + binop(e.op) + wrap(*e.args[1], p + 1);
    }
  }
}

bool sameExpr(const Expr& a, const Expr& b) {
  if (a.op != b.op || a.ival != b.ival || a.name != b.name || a.comp != b.comp ||
      a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!sameExpr(*a.args[i], *b.args[i])) return false;
  return true;
}

ExprPtr cloneExpr(const Expr& e) {
  auto c = std::make_shared<Expr>();
  c->op = e.op;
  c->pos = e.pos;
  c->ival = e.ival;
  c->name = e.name;
  c->comp = e.comp;
  for (auto& a : e.args) c->args.push_back(cloneExpr(*a));
  return c;
}

void collectProps(const Expr& e, std::vector<QualifiedProp>& out) {
  if ((e.op == Expr::Op::Name || e.op == Expr::Op::Prop) && e.ref == Expr::Ref::Prop) {
    for (auto& p : out)
      if (p == e.prop) return;
    out.push_back(e.prop);
    return;
  }
  for (auto& a : e.args) collectProps(*a, out);
}

}  // namespace sv
