#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <vector>

#include "rootlts/env.hpp"

namespace rootlts {

// Dense index into the node arena. Ids are assigned in generation order;
// the root has id 0, so the id doubles as the FIFO insertion counter.
struct NodeId {
  std::uint32_t v = kInvalidValue;

  static constexpr std::uint32_t kInvalidValue = 0xFFFFFFFFu;

  bool valid() const { return v != kInvalidValue; }
  friend bool operator==(NodeId a, NodeId b) { return a.v == b.v; }
  friend bool operator!=(NodeId a, NodeId b) { return a.v != b.v; }
};

inline constexpr NodeId kNoNode{};

struct NodeRecord {
  NodeId parent = kNoNode;  // invalid at the root
  StateId state = 0;
  std::uint32_t depth = 0;
  std::uint32_t num_children = 0;  // set when the node is expanded
  double cond_prob = 1.0;          // pi(n | parent), 1 at the root
  double log_cond_prob = 0.0;      // log pi(n | parent), 0 at the root
  double log_path_prob = 0.0;      // log pi(n)
  double slenderness = 1.0;        // lambda(n), kept in linear space
  double log_cost = 0.0;           // assigned once, at insertion
  Signal signal;                   // signal of the generating transition
  // Set exactly once, together, when the node is visited.
  std::uint64_t visit_step = 0;  // 0 = not visited; steps are 1-based
  double reroot_weight = std::numeric_limits<double>::quiet_NaN();

  bool visited() const { return visit_step != 0; }
};

// Append-only node store; nodes are never deleted during a run.
class NodeArena {
 public:
  NodeId add(NodeRecord rec) {
    NodeId id{static_cast<std::uint32_t>(nodes_.size())};
    nodes_.push_back(rec);
    return id;
  }

  const NodeRecord& operator[](NodeId id) const {
    assert(id.v < nodes_.size());
    return nodes_[id.v];
  }
  NodeRecord& operator[](NodeId id) {
    assert(id.v < nodes_.size());
    return nodes_[id.v];
  }

  std::size_t size() const { return nodes_.size(); }
  bool contains(NodeId id) const { return id.v < nodes_.size(); }

 private:
  std::vector<NodeRecord> nodes_;
};

}  // namespace rootlts
