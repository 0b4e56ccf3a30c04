#pragma once

#include <cstdint>
#include <vector>

namespace rootlts {

// Opaque state handle. Environments choose the encoding; handles are only
// ever produced by root()/expand() and passed back unchanged.
using StateId = std::uint64_t;

// Signal attached to the transition that generated a node. clue_type 0
// means no clue; typed domains use small positive integers, generic clue
// domains use 1.
struct Signal {
  std::int32_t clue_type = 0;
  double reward = 0.0;

  bool is_clue() const { return clue_type != 0; }
};

struct ChildEdge {
  StateId state = 0;
  double cond_prob = 0.0;  // in (0, 1]
  Signal signal;
};

// State generator: root, ordered children with conditional policy
// probabilities, goal test, and per-transition signals. Expansion must be
// deterministic given the state and the environment seed; repeated calls
// on the same state return identical edges.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual StateId root() const = 0;
  virtual void expand(StateId state, std::vector<ChildEdge>& out) const = 0;
  virtual bool is_goal(StateId state) const = 0;

  // True iff at every state with at least one child the conditional
  // probabilities sum to exactly 1.
  virtual bool proper_policy() const = 0;

  // Signal carried by the root node itself (no generating transition).
  virtual Signal root_signal() const { return {}; }

  // When true, signal counters advance when a node is generated rather
  // than when it is visited. Default is visit-time.
  virtual bool observe_at_generation() const { return false; }

  // Largest clue_type this environment emits; sizes per-type counters.
  virtual std::int32_t max_clue_type() const { return 1; }
};

}  // namespace rootlts
