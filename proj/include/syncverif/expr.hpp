#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "syncverif/core.hpp"

namespace sv {

struct Pos {
  int line = 0, col = 0;
};

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

struct Expr {
  enum class Op {
    BoolLit, IntLit, Name, Prop, SetLit, TupleLit, Proj,
    Not, Neg, Size,
    And, Or, Eq, Ne, Lt, Le, Gt, Ge, Add, Sub, In,
    Ite
  };
  // What a Name or Prop node resolved to after checking.
  enum class Ref { None, Var, Local, Const, Prop };

  Op op = Op::BoolLit;
  Pos pos;
  int64_t ival = 0;           // literal value or projection index
  std::string name;           // identifier or property name
  std::string comp;           // qualifier of COMP$prop, empty when bare
  std::vector<ExprPtr> args;  // operands or property arguments

  Ref ref = Ref::None;
  int slot = -1;
  Value constant;
  QualifiedProp prop;
  TypeRef type;

  static ExprPtr make(Op op, std::vector<ExprPtr> args = {}, Pos pos = {});
  static ExprPtr boolLit(bool b);
  static ExprPtr intLit(int64_t v);
  static ExprPtr name_(std::string n);
};

struct EvalEnv {
  const std::vector<Value>* vars = nullptr;
  const std::vector<Value>* locals = nullptr;
  const std::function<Value(const QualifiedProp&)>* prop = nullptr;
};

// Throws InputError on runtime faults (projection out of range, missing context).
Value evalExpr(const Expr& e, const EvalEnv& env);

// Source form with minimal parentheses; resolved property references print
// fully qualified, so the output doubles as a canonical key.
std::string printExpr(const Expr& e);

// Structural equality ignoring positions and resolution data.
bool sameExpr(const Expr& a, const Expr& b);

// Deep copy without resolution data, for re-checking in another scope.
ExprPtr cloneExpr(const Expr& e);

// Collect resolved property references (in order of first occurrence).
void collectProps(const Expr& e, std::vector<QualifiedProp>& out);

}  // namespace sv
