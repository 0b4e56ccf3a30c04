#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootlts/cost.hpp"
#include "rootlts/env.hpp"
#include "rootlts/node.hpp"
#include "rootlts/rerooter.hpp"

namespace rootlts {

enum class StopReason { kGoalFound, kStepBudget, kQueueEmpty };

const char* to_string(StopReason r);

struct Solution {
  NodeId node;
  std::uint64_t step = 0;  // T
};

// Thrown when a cost model produces NaN for a node.
class NumericFault : public std::runtime_error {
 public:
  NumericFault(NodeId node, const std::string& what)
      : std::runtime_error(what), node_(node) {}
  NodeId node() const { return node_; }

 private:
  NodeId node_;
};

// Full trace of one best-first search run. Vectors are indexed by step-1.
struct SearchRun {
  NodeArena arena;
  std::vector<NodeId> visit_order;
  std::vector<double> weights;           // w_t
  std::vector<double> cum_weight;        // W_{<=t}
  std::vector<double> input_weights;     // w~_t
  std::vector<double> cum_input_weight;  // W~_{<=t}
  std::vector<std::uint64_t> clue_count;  // q_t, clues visited up to t
  SignalCounters final_counters;
  std::optional<Solution> solution;
  StopReason stop_reason = StopReason::kQueueEmpty;
  std::size_t peak_queue = 0;
  std::uint64_t seed = 0;

  std::uint64_t steps() const { return visit_order.size(); }

  double weight_at(std::uint64_t t) const { return weights[t - 1]; }
  double input_weight_at(std::uint64_t t) const { return input_weights[t - 1]; }
  // W_{<=t} and W_{<t}; t is 1-based, W_{<1} = 0.
  double cum_weight_leq(std::uint64_t t) const { return cum_weight[t - 1]; }
  double cum_weight_lt(std::uint64_t t) const {
    return t <= 1 ? 0.0 : cum_weight[t - 2];
  }
  double cum_input_weight_leq(std::uint64_t t) const {
    return cum_input_weight[t - 1];
  }
  double cum_input_weight_lt(std::uint64_t t) const {
    return t <= 1 ? 0.0 : cum_input_weight[t - 2];
  }
};

// Best-first search over (env, cost model, rerooter). Visits nodes in
// nondecreasing (log-cost, insertion id) order; ties break FIFO. At each
// visit the rerooter is queried and w_t recorded before children are
// generated, so child costs are fully determined at insertion time. The
// goal test is a stopping criterion only.
SearchRun run_search(const Environment& env, CostModel& model,
                     Rerooter& rerooter, std::uint64_t budget,
                     std::uint64_t seed);

// Root-to-node id chain. Throws std::out_of_range for unknown ids.
std::vector<NodeId> reconstruct_path(const SearchRun& run, NodeId node);

}  // namespace rootlts
