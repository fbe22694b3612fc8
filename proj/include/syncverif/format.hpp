#pragma once

#include <string>
#include <utility>
#include <vector>

#include "syncverif/build.hpp"
#include "syncverif/sim.hpp"

namespace sv {

// Renumbers states breadth-first from the initial state (successors in stored
// order); unreachable states follow in index order.
PlainStructure canonical_order(const PlainStructure& p);

// Text form of a split: header, `id | stage ; stage | key=value ; ...` per state,
// then `src -> dst` per edge. Always written in canonical order.
std::string write_structure(const PlainStructure& p);
// Re-ingested structures carry stage descriptors instead of component structures.
PlainStructure read_structure(const std::string& text);

std::string type_text(const TypeRef& t);  // enums carry their symbols
TypeRef parse_type_text(const std::string& text);

// Relation file: `left X`, `right Y`, then either one relation body or one
// `map A -> B ... end` block per component of a compound. A body is a `props`
// line (`p`, or `p as q` when spelled differently) followed by `identity` or
// `descriptor -> descriptor` lines.
struct RelBlock {
  std::string left, right;
  std::vector<std::pair<std::string, std::string>> props;
  bool identity = false;
  std::vector<std::pair<std::string, std::string>> pairs;
};
struct RelFile {
  std::string left, right;
  std::vector<RelBlock> blocks;
  bool compound = false;  // blocks came from `map` sections
};
RelFile parse_rel(const std::string& text);
StageRelation resolve_rel(const RelBlock& b, const AtomicStructure& left, const AtomicStructure& right);

// Partition file: `system X`, `props p, ...`, then `descriptor -> block` lines.
struct PartitionFile {
  std::string system;
  std::vector<std::string> props;
  std::vector<std::pair<std::string, std::string>> members;
};
PartitionFile parse_partition(const std::string& text);
// Blocks are numbered by first occurrence; every stage must be listed once.
Partition resolve_partition(const PartitionFile& f, const AtomicStructure& a);

std::string read_file(const std::string& path);  // InputError if unreadable

}  // namespace sv
