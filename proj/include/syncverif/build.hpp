#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "syncverif/core.hpp"

namespace sv {

constexpr size_t kDefaultMaxStates = 1000000;

// Default bound, overridden by SYNCVERIF_MAX_STATES when set.
size_t defaultBound();

// States-only transition structure. Property values are interned per property.
// Provenance records, per state, the stage of every atomic component.
struct PlainStructure {
  std::vector<std::vector<int>> succ;
  int initial = 0;

  std::vector<QualifiedProp> propKeys;
  std::vector<TypeRef> propTypes;
  std::vector<std::vector<Value>> propDomain;
  std::vector<uint32_t> propTable;  // [state * propKeys.size() + p] -> index into propDomain[p]

  std::vector<std::string> components;
  std::vector<AtomicRef> componentStructs;       // empty for re-ingested structures
  std::vector<std::vector<std::string>> stageNames;  // used when componentStructs is empty
  std::vector<std::vector<int>> prov;                // per state, stage per component
  std::vector<SyncCriterion> criteria;

  size_t size() const { return succ.size(); }
  size_t numEdges() const;
  int findProp(const std::string& key) const;
  const Value& prop(int state, int p) const {
    return propDomain[static_cast<size_t>(p)]
                     [propTable[static_cast<size_t>(state) * propKeys.size() + static_cast<size_t>(p)]];
  }
  bool hasProvenance() const { return !prov.empty(); }
  std::string stageName(int component, int stage) const;
  int componentIndex(const std::string& name) const;
  // True iff the component stage has a successor in its own structure.
  bool locallyExtendable(int component, int stage) const;
  std::vector<std::vector<int>> predecessors() const;
};

PlainStructure split_atomic(const AtomicStructure& s);
PlainStructure split_atomic(const AtomicRef& s);

// Reachable part of the product of plain structures under the criteria.
PlainStructure compose_plain(const std::vector<PlainStructure>& components,
                             const std::vector<SyncCriterion>& criteria,
                             size_t bound = defaultBound());

PlainStructure split_compound(const System& s, size_t bound = defaultBound());

int project_state(const PlainStructure& p, int state, int component);
// Component path with consecutive repetitions removed.
std::vector<int> project_path(const PlainStructure& p, const std::vector<int>& path, int component);

// Isomorphism seeded by provenance descriptors; structures must carry provenance.
bool isomorphic(const PlainStructure& a, const PlainStructure& b);

}  // namespace sv
