#pragma once

#include <memory>
#include <string>
#include <vector>

#include "syncverif/expr.hpp"

namespace sv {

enum class Rel { Eq, Lt, Le, Ne };

struct Atom {
  ExprPtr lhs;
  Rel rel = Rel::Eq;
  ExprPtr rhs;
  std::string key;  // canonical text; equal atoms have equal keys
};
using AtomRef = std::shared_ptr<const Atom>;

AtomRef makeAtom(ExprPtr lhs, Rel rel, ExprPtr rhs);
bool evalAtom(const Atom& a, const EvalEnv& env);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Next-free LTL core; derived operators are expanded by the builders below.
struct Formula {
  enum class Op { True, False, Atom, Not, And, Or, Until, Release };
  Op op = Op::True;
  AtomRef atom;
  FormulaPtr a, b;
};

FormulaPtr fTrue();
FormulaPtr fFalse();
FormulaPtr fAtom(AtomRef a);
FormulaPtr fNot(FormulaPtr a);
FormulaPtr fAnd(FormulaPtr a, FormulaPtr b);
FormulaPtr fOr(FormulaPtr a, FormulaPtr b);
FormulaPtr fUntil(FormulaPtr a, FormulaPtr b);
FormulaPtr fRelease(FormulaPtr a, FormulaPtr b);
FormulaPtr fImplies(FormulaPtr a, FormulaPtr b);
FormulaPtr fIff(FormulaPtr a, FormulaPtr b);
FormulaPtr fEventually(FormulaPtr a);
FormulaPtr fAlways(FormulaPtr a);
FormulaPtr fWeakUntil(FormulaPtr a, FormulaPtr b);
FormulaPtr fAndAll(const std::vector<FormulaPtr>& xs);

// Negation pushed to atoms using the U/R duality.
FormulaPtr nnf(const FormulaPtr& f);
int depth(const Formula& f);
std::string printFormula(const Formula& f);
bool sameFormula(const Formula& a, const Formula& b);
// Distinct atoms in order of first occurrence.
std::vector<AtomRef> formulaAtoms(const Formula& f);

// Surface syntax tree, kept for pretty-printing spec files.
struct FAst;
using FAstPtr = std::shared_ptr<FAst>;
struct FAst {
  enum class Op { True, False, Atom, Not, And, Or, Implies, Iff, Until, WeakUntil, Release, Always, Eventually };
  Op op = Op::True;
  ExprPtr lhs, rhs;  // Atom: rhs set for `t == u`, null for a bare term
  std::vector<FAstPtr> kids;
  Pos pos;
};

std::string printFAst(const FAst& f);
bool sameFAst(const FAst& a, const FAst& b);

}  // namespace sv
