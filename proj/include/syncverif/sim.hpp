#pragma once

#include <string>
#include <utility>
#include <vector>

#include "syncverif/build.hpp"

namespace sv {

// A stage graph with the values of the observed properties, aligned by index
// between the two sides of a relation.
struct LabeledGraph {
  std::vector<std::vector<int>> succ;
  int initial = 0;
  std::vector<std::string> names;         // stage descriptors
  std::vector<std::vector<Value>> values;  // [stage][property]
};

// `props` are property names with arguments, e.g. isGranting(1).
LabeledGraph view(const AtomicStructure& a, const std::vector<std::string>& props);
// `keys` are fully qualified property keys of the plain structure.
LabeledGraph view(const PlainStructure& p, const std::vector<std::string>& keys);

struct StageRelation {
  std::vector<std::pair<int, int>> pairs;
  std::vector<std::pair<std::string, std::string>> props;  // observed property, left and right spelling

  StageRelation inverse() const;
  static StageRelation identity(size_t n, const std::vector<std::string>& props);
};

struct SimResult {
  bool ok = true;
  std::string clause;  // "initial", "labels" or "step"
  int left = -1, right = -1, leftNext = -1;
  std::string detail;
};

SimResult check_simulation(const LabeledGraph& left, const LabeledGraph& right, const StageRelation& rel);
SimResult check_simulation(const AtomicStructure& left, const AtomicStructure& right, const StageRelation& rel);

struct BisimResult {
  SimResult forward, backward;
  bool ok() const { return forward.ok && backward.ok; }
};
BisimResult check_bisimulation(const LabeledGraph& left, const LabeledGraph& right, const StageRelation& rel);
BisimResult check_bisimulation(const AtomicStructure& left, const AtomicStructure& right, const StageRelation& rel);

// Property correspondence of two compounds, component by component; empty when
// the criteria sets agree on the observed properties, otherwise the mismatches.
std::vector<std::string> criteria_correspond(const PlainStructure& left, const PlainStructure& right,
                                             const std::vector<StageRelation>& rels);

// Product of component relations over the reachable split states; throws
// InputError when the criteria do not correspond.
StageRelation compose_relations(const std::vector<StageRelation>& rels, const PlainStructure& left,
                                const PlainStructure& right);
SimResult check_simulation(const PlainStructure& left, const PlainStructure& right, const StageRelation& rel);
BisimResult check_bisimulation(const PlainStructure& left, const PlainStructure& right, const StageRelation& rel);

using Partition = std::vector<int>;  // block per stage, blocks numbered 0..k-1

struct Quotient {
  AtomicRef structure;      // block stages carry the first member's data
  StageRelation relation;   // stage -> its block
  std::vector<std::vector<int>> blocks;
};

// Throws InputError when a block mixes stage kinds or observed values.
Quotient quotient(const AtomicStructure& a, const Partition& part, const std::vector<std::string>& props);
// Blocks of stages with equal kind and equal observed values, in first-occurrence order.
Partition predicate_abstraction(const AtomicStructure& a, const std::vector<std::string>& props);

// Parses "name" or "name(arg,...)" against the structure's property signatures.
QualifiedProp parse_prop_ref(const AtomicStructure& a, const std::string& text);

}  // namespace sv
