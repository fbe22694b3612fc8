#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syncverif/build.hpp"
#include "syncverif/formula.hpp"

namespace sv {

// Term evaluation at a split state, or at one stage per atomic component of a compound.
Value eval_expr(const PlainStructure& p, int state, const Expr& e);
Value eval_expr(const System& s, const std::map<std::string, int>& stages, const Expr& e);
bool eval_atom(const PlainStructure& p, int state, const Atom& a);

// Atoms deduplicated by key; the formula refers to exactly these atom objects.
struct Standardized {
  std::vector<AtomRef> atoms;
  FormulaPtr formula;
  int index(const std::string& key) const;
};
Standardized standardize(const FormulaPtr& f);

// Bit i of labels[q] is set iff atoms[i] holds at q.
struct KripkeLabeling {
  std::vector<AtomRef> atoms;
  std::vector<uint64_t> labels;
};
KripkeLabeling label(const PlainStructure& p, const std::vector<AtomRef>& atoms);

struct Completed {
  PlainStructure structure;
  std::vector<char> completed;  // states that received a self-loop
};
Completed stutter_complete(const PlainStructure& p);

// State-labelled Büchi automaton: entering location l reads a letter that must
// contain pos[l] and avoid neg[l].
struct BuchiAutomaton {
  size_t numAtoms = 0;
  std::vector<uint64_t> pos, neg;
  std::vector<std::vector<int>> succ;
  std::vector<int> initial;
  std::vector<char> accepting;

  size_t size() const { return succ.size(); }
  bool admits(int loc, uint64_t letter) const {
    return (letter & pos[static_cast<size_t>(loc)]) == pos[static_cast<size_t>(loc)] &&
           (letter & neg[static_cast<size_t>(loc)]) == 0;
  }
  std::string guard(int loc, const std::vector<AtomRef>& atoms) const;
};

constexpr size_t kDefaultAutomatonCap = 200000;

// Atoms of f must all appear in `atoms`; throws ResourceError past the node cap.
BuchiAutomaton ltl_to_buchi(const FormulaPtr& f, const std::vector<AtomRef>& atoms,
                            size_t cap = kDefaultAutomatonCap);

struct Trace {
  enum class Kind { Finite, Lasso };
  Kind kind = Kind::Finite;
  std::vector<int> prefix;  // for finite traces, the whole path
  std::vector<int> cycle;   // lasso only; last state steps back to cycle.front()

  std::vector<int> unrolled(size_t loops = 1) const;
};

struct Verdict {
  bool holds = true;
  std::optional<Trace> trace;
};

Verdict model_check(const PlainStructure& p, const FormulaPtr& f);
Verdict model_check(const System& s, const FormulaPtr& f, size_t bound = defaultBound());

// Some maximal path extending `prefix` (a path from the initial state) satisfies f.
bool exists_extension_satisfying(const PlainStructure& p, const std::vector<int>& prefix, const FormulaPtr& f);

struct Validity {
  bool valid = true;
  std::vector<AtomRef> atoms;
  // countermodel as atom valuations (bit i = atoms[i]); the cycle repeats forever
  std::vector<uint64_t> prefix, cycle;
};
// Atoms are independent propositions.
Validity check_validity(const FormulaPtr& f);

}  // namespace sv
