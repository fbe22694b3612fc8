#pragma once

#include <string>
#include <vector>

#include "syncverif/build.hpp"

namespace sv {

struct DeadlockWitness {
  int state = 0;                  // terminal split state
  std::vector<int> path;          // from the initial state to `state`
  std::vector<char> extendable;   // per component
};

struct StarvationWitness {
  enum class Kind { Finite, Infinite };
  Kind kind = Kind::Finite;
  int component = 0;     // a starved component
  int stage = 0;         // its frozen stage
  std::vector<int> prefix;
  std::vector<int> cycle;  // infinite witnesses: states along which the component stays frozen
};

// Reachable terminal split states where every component could still step locally.
std::vector<DeadlockWitness> find_deadlocks(const PlainStructure& split);
std::vector<DeadlockWitness> find_deadlocks(const System& s, size_t bound = defaultBound());

// Executions in which some component path is not maximal.
std::vector<StarvationWitness> find_starvation(const PlainStructure& split);
std::vector<StarvationWitness> find_starvation(const System& s, size_t bound = defaultBound());

// Re-validates a witness against the split; empty string when sound.
std::string check_witness(const PlainStructure& split, const DeadlockWitness& w);
std::string check_witness(const PlainStructure& split, const StarvationWitness& w);

// The receiver can follow any value the partner property takes, from every non-terminal stage.
bool check_prop12(const AtomicStructure& receiver, const QualifiedProp& receiverProp,
                  const AtomicStructure& partner, const QualifiedProp& partnerProp);

struct Prop13Result {
  bool holds = true;
  std::vector<std::string> evidence;  // chosen criterion per component pair, or the missing pair
};
// Every component pair is linked by a boolean criterion whose two sides both keep flipping.
Prop13Result check_prop13(const System& s);

}  // namespace sv
