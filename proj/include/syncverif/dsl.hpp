#pragma once

#include <map>
#include <string>
#include <vector>

#include "syncverif/build.hpp"
#include "syncverif/expr.hpp"
#include "syncverif/formula.hpp"

namespace sv {

struct TypeAst {
  enum class Kind { Bool, Range, Named, Set, Tuple };
  Kind kind = Kind::Bool;
  int64_t lo = 0, hi = 0;
  std::string name;  // Named: enum or alias; Set: element enum
  std::vector<TypeAst> elems;
  Pos pos;
};

struct EnumAst {
  std::string name;
  std::vector<std::string> symbols;
  Pos pos;
};

struct TypeDefAst {
  std::string name;
  TypeAst type;
  Pos pos;
};

struct ParamAst {
  std::string name;
  TypeAst type;
};

struct VarAst {
  std::string name;
  TypeAst type;
  ExprPtr init;
  Pos pos;
};

struct RuleAst {
  std::string name;
  std::vector<ParamAst> params;
  ExprPtr guard;
  std::string label;
  std::vector<ExprPtr> labelArgs;
  std::vector<std::pair<std::string, ExprPtr>> updates;
  Pos pos;
};

struct CaseAst {
  bool isState = false;
  std::string trans;
  bool anyArgs = false;  // `trans name` without an argument list
  std::vector<std::string> binders;
  ExprPtr body;
  Pos pos;
};

struct PropAst {
  enum class Form { Match, At, Plain };
  std::string name;
  std::vector<ParamAst> params;
  bool hasType = false;
  TypeAst type;
  Form form = Form::Plain;
  std::vector<CaseAst> cases;
  ExprPtr deflt;    // Match default, At else-branch, Plain body
  ExprPtr atValue;  // At: value at the named transition
  std::string atTrans;
  Pos pos;
};

struct SystemAst {
  std::string name;
  std::string cloneOf;  // `system X = Y;`
  std::vector<EnumAst> enums;
  std::vector<TypeDefAst> types;
  std::vector<VarAst> vars;
  std::vector<RuleAst> rules;
  std::vector<PropAst> props;
  Pos pos;
};

struct QPropAst {
  std::string comp, name;
  std::vector<ExprPtr> args;
  Pos pos;
};

struct CriterionAst {
  QPropAst left, right;
};

struct ComposeAst {
  std::string name;
  std::vector<std::string> comps;
  std::vector<CriterionAst> criteria;
  Pos pos;
};

struct AgAst {
  std::string system;
  FAstPtr alpha, gamma;
  Pos pos;
};

enum class DischargeMode { Safety, Fairness, Compound };

struct ObligationAst {
  std::string component;
  FAstPtr alpha, gamma;
  DischargeMode mode = DischargeMode::Compound;
  Pos pos;
};

struct ProofAst {
  std::string name, system;
  std::vector<ObligationAst> obligations;
  FAstPtr alpha, gamma;
  Pos pos;
};

struct SpecFile {
  enum class Item { Import, System, Compose, Ag, Proof };
  std::vector<EnumAst> sharedEnums;
  std::vector<TypeDefAst> sharedTypes;
  std::vector<std::string> imports;
  std::vector<SystemAst> systems;
  std::vector<ComposeAst> composes;
  std::vector<AgAst> ags;
  std::vector<ProofAst> proofs;
  std::vector<std::pair<Item, size_t>> order;  // top-level declaration order
};

// Throws InputError "file:line:col: message".
SpecFile parse_spec(const std::string& text, const std::string& filename = "<input>");
// Reads the file and splices imported files (paths relative to the importing file).
SpecFile parse_spec_file(const std::string& path);
std::string print_spec(const SpecFile& s);
bool sameSpec(const SpecFile& a, const SpecFile& b);

const char* modeName(DischargeMode m);

struct Model {
  SpecFile spec;
  std::vector<std::string> names;  // systems and compositions in declaration order
  std::map<std::string, SystemRef> systems;

  const SystemRef& system(const std::string& name) const;  // InputError if unknown
};

// Type checks every declaration and elaborates every system.
Model build_model(const SpecFile& spec, size_t bound = defaultBound());
Model load_model(const std::string& text, size_t bound = defaultBound());
Model load_model_file(const std::string& path, size_t bound = defaultBound());

// Elaborates one system declaration of a spec (checked in the spec's shared scope).
AtomicRef elaborate(const SpecFile& spec, const std::string& system, size_t bound = defaultBound());

FAstPtr parse_formula_ast(const std::string& text);
FormulaPtr resolve_formula(const FAst& f, const System& scope);
FormulaPtr resolve_formula(const FAst& f, const PlainStructure& scope);
FormulaPtr parse_formula(const std::string& text, const System& scope);
FormulaPtr parse_formula(const std::string& text, const PlainStructure& scope);

}  // namespace sv
