#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "syncverif/value.hpp"

namespace sv {

struct TransTerm {
  std::string name;
  std::vector<Value> args;
  bool operator==(const TransTerm& o) const { return name == o.name && args == o.args; }
  bool operator<(const TransTerm& o) const {
    return name != o.name ? name < o.name : args < o.args;
  }
};

struct Stage {
  enum class Kind { State, Trans };
  Kind kind = Kind::State;
  std::vector<Value> vals;  // state valuation, ordered as the structure's varNames
  TransTerm term;           // transition term

  bool isState() const { return kind == Kind::State; }
};

struct PropertyDef {
  std::string name;
  std::vector<TypeRef> params;
  TypeRef codomain;
  std::function<Value(const Stage&, const std::vector<Value>&)> eval;
};

struct AtomicStructure {
  std::string name;
  std::vector<std::string> varNames;
  std::vector<Stage> stages;
  std::vector<std::vector<int>> succ;
  int initial = 0;
  std::vector<PropertyDef> props;

  size_t size() const { return stages.size(); }
  bool isState(int g) const { return stages[static_cast<size_t>(g)].isState(); }
  const PropertyDef* findProp(const std::string& n) const;
  // state{var=value,...} or trans name(args)
  std::string describe(int g) const;
  int findStage(const std::string& descriptor) const;
};
using AtomicRef = std::shared_ptr<const AtomicStructure>;

struct QualifiedProp {
  std::string component;
  std::string name;
  std::vector<Value> params;

  std::string key() const;  // COMP$name or COMP$name(p1,p2)
  bool operator==(const QualifiedProp& o) const {
    return component == o.component && name == o.name && params == o.params;
  }
  bool operator<(const QualifiedProp& o) const { return key() < o.key(); }
};

struct SyncCriterion {
  QualifiedProp left, right;
  std::string str() const { return left.key() + " == " + right.key(); }
};

// Unordered comparison of criteria sets.
bool sameCriteria(const std::vector<SyncCriterion>& a, const std::vector<SyncCriterion>& b);

struct System;
using SystemRef = std::shared_ptr<const System>;

struct System {
  std::string name;
  AtomicRef leaf;  // set for leaves
  std::vector<SystemRef> children;
  std::vector<SyncCriterion> criteria;

  bool isLeaf() const { return leaf != nullptr; }
};

SystemRef makeLeaf(AtomicRef s);
SystemRef makeNode(std::string name, std::vector<SystemRef> children,
                   std::vector<SyncCriterion> criteria);
// Flat equivalent: one node over all atoms with all criteria.
SystemRef flatten(const System& s);

std::vector<AtomicRef> atoms(const System& s);
std::vector<SyncCriterion> criteria(const System& s);
const AtomicStructure* findAtom(const System& s, const std::string& name);

// One diagnostic per unresolvable or type-mismatched criterion; empty when suitable.
std::vector<std::string> check_suitability(const System& s);

// Resolves the property and checks parameter arity and types; throws InputError.
const PropertyDef& resolveProp(const AtomicStructure& a, const QualifiedProp& p);
Value eval_property(const AtomicStructure& a, int stage, const QualifiedProp& p);

// True iff every criterion is satisfied by the given component stages.
bool compatible_stages(const std::map<std::string, std::pair<const AtomicStructure*, int>>& stages,
                       const std::vector<SyncCriterion>& crit);

// Structural check of a hand-built or elaborated structure.
std::vector<std::string> validate(const AtomicStructure& a);

}  // namespace sv
