#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syncverif/dsl.hpp"
#include "syncverif/ltl.hpp"

namespace sv {

// Decides alpha |> gamma by checking alpha -> gamma on the split.
Verdict ag_check(const PlainStructure& subject, const FormulaPtr& alpha, const FormulaPtr& gamma);
Verdict ag_check(const System& subject, const FormulaPtr& alpha, const FormulaPtr& gamma,
                 size_t bound = defaultBound());

// Conservative syntactic safety: atoms and their negations closed under and, or,
// always and weak until (any release of safety formulas after normalization).
bool is_safety(const FormulaPtr& f);

struct AgObligation {
  SystemRef component;
  FormulaPtr alpha, gamma;
  DischargeMode mode = DischargeMode::Compound;
};

struct ObligationSet {
  SystemRef system;
  std::vector<AgObligation> obligations;
  FormulaPtr alpha, gamma;  // target
  bool assumeFairness = false;
};

struct ConditionResult {
  std::string condition;  // "1a", "1b" or "2"
  std::string component;  // empty for condition 2
  size_t index = 0;       // obligation index
  bool ok = true;
  std::string detail;
  std::optional<Trace> trace;
  std::shared_ptr<const PlainStructure> traceStructure;
  std::optional<Validity> countermodel;
};

struct ComposeReport {
  bool derived = false;
  std::vector<ConditionResult> steps;
  std::vector<std::string> notes;
  FormulaPtr condition2;
  const ConditionResult* firstFailure() const;
};

ComposeReport ag_compose(const ObligationSet& obl, size_t bound = defaultBound());

// Synchronization premise of the validity check: each criterion as an invariant over atoms.
FormulaPtr criteria_invariant(const System& s);

// Builds the obligation set of a `compose-proof` declaration.
ObligationSet obligations_from_proof(const Model& m, const std::string& proof);

}  // namespace sv
