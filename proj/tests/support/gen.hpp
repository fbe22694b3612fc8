#pragma once

#include <random>
#include <string>
#include <vector>

#include "syncverif/core.hpp"
#include "syncverif/formula.hpp"

namespace svtest {

using Rng = std::mt19937;

// Random bipartite structure with 1..maxStages stages (stage 0 is the initial
// state), boolean properties p0..p{bools-1} and an int property v : 0..2.
sv::AtomicRef random_atomic(Rng& rng, const std::string& name, int maxStages = 6, int bools = 2);

// Builds a structure from explicit data; kinds[g] true for states.
sv::AtomicRef make_atomic(const std::string& name, const std::vector<bool>& kinds,
                          const std::vector<std::vector<int>>& succ,
                          const std::vector<std::vector<bool>>& boolProps, const std::vector<int>& intProp);

struct RandomCompound {
  std::vector<sv::AtomicRef> comps;
  sv::SystemRef system;
};
// 1..maxComps components C0.. with up to maxCriteria criteria between boolean properties.
RandomCompound random_compound(Rng& rng, int maxComps = 3, int maxStages = 6, int maxCriteria = 2);

// Atom spellings usable in formulas over the given components.
std::vector<std::string> atom_texts(const std::vector<sv::AtomicRef>& comps);

// Random next-free formula text of bounded depth.
std::string random_formula(Rng& rng, const std::vector<std::string>& atoms, int depth = 3);
// Formula text within the syntactic safety fragment.
std::string random_safety_formula(Rng& rng, const std::vector<std::string>& atoms, int depth = 3);

// Copy of `a` with one stage duplicated: the clone keeps properties and
// successors and takes over some incoming edges. `rel` relates a to the copy.
struct Unfolding {
  sv::AtomicRef copy;
  std::vector<std::pair<int, int>> rel;
};
Unfolding unfold_stage(Rng& rng, const sv::AtomicRef& a);

}  // namespace svtest
