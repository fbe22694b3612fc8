#pragma once

#include <functional>
#include <string>
#include <vector>

#include "syncverif/build.hpp"
#include "syncverif/formula.hpp"
#include "syncverif/ltl.hpp"

namespace sv {

// Finite paths end at a terminal state; lassos are stored with a fold-free
// prefix and a simple cycle, so each infinite path has one representation.
using MaxPath = Trace;

constexpr size_t kOracleMaxPaths = 2000000;

// Every maximal path whose representation has at most `prefixBound` states.
// `maxVisits` (0 = unlimited) caps how often one state may occur in a prefix.
std::vector<MaxPath> enumerate_maximal_paths(const PlainStructure& p, size_t prefixBound, size_t maxVisits = 0);
// Same enumeration, streamed; stops as soon as `visit` returns false.
// Returns false iff stopped early.
bool for_each_maximal_path(const PlainStructure& p, size_t prefixBound, size_t maxVisits,
                           const std::function<bool(const MaxPath&)>& visit);

// All paths from the initial state with 1..maxLen states.
std::vector<std::vector<int>> enumerate_finite_paths(const PlainStructure& p, size_t maxLen);
std::vector<std::vector<int>> enumerate_finite_paths(const AtomicStructure& a, size_t maxLen);

// Criterion values per component stage, for fast compatibility checks on stage tuples.
struct CriteriaTable {
  struct Side {
    int comp;
    std::vector<Value> values;  // by stage
  };
  std::vector<std::pair<Side, Side>> rows;
  CriteriaTable(const std::vector<const AtomicStructure*>& comps, const std::vector<SyncCriterion>& criteria);
  bool compatible(const std::vector<int>& stages) const;
};

struct IndexRelation {
  std::vector<std::vector<int>> tuples;
};

// Linearized index relation for finite component paths, searched depth first with
// step sets in ascending bitmask order.
std::optional<IndexRelation> find_index_relation(const std::vector<const AtomicStructure*>& comps,
                                                 const std::vector<std::vector<int>>& paths,
                                                 const std::vector<SyncCriterion>& criteria,
                                                 size_t searchBound = 1000000);
// Violated conditions, empty when the relation is valid for the paths.
std::vector<std::string> validate_index_relation(const std::vector<const AtomicStructure*>& comps,
                                                 const std::vector<std::vector<int>>& paths,
                                                 const std::vector<SyncCriterion>& criteria,
                                                 const IndexRelation& rel);

// Literal evaluation over the positions of the path.
bool path_satisfies(const PlainStructure& p, const MaxPath& path, const FormulaPtr& f);
// Same over explicit atom valuations (bit i = atoms[i]).
bool word_satisfies(const std::vector<AtomRef>& atoms, const std::vector<uint64_t>& prefix,
                    const std::vector<uint64_t>& cycle, const FormulaPtr& f);

struct Prop5Report {
  size_t splitPaths = 0;
  size_t compatibleTuples = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

// Checks, for split paths with at most `bound` states, the correspondence between
// split paths and compatible tuples of component paths in both directions.
Prop5Report check_prop5(const PlainStructure& split, size_t bound);
Prop5Report check_prop5(const System& s, size_t bound);

// A/G satisfaction for the subject inside one fixed environment, by enumeration.
bool ag_oracle_fixed_env(const PlainStructure& subject, const PlainStructure& env,
                         const std::vector<SyncCriterion>& y, const FormulaPtr& alpha,
                         const FormulaPtr& gamma, size_t bound);

struct Prop6Result {
  bool applicable = false;  // premises hold
  bool holds = true;        // conclusion holds whenever applicable
};

// comps[0..split) form the first group. Checks that the successor stages are compatible
// whenever the group-local and cross-group conditions hold.
Prop6Result check_prop6(const std::vector<const AtomicStructure*>& comps, size_t split,
                        const std::vector<SyncCriterion>& criteria, const std::vector<int>& stages,
                        const std::vector<int>& next);

}  // namespace sv
