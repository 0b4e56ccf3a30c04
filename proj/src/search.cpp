#include "rootlts/search.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "rootlts/util.hpp"

namespace rootlts {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::kGoalFound:
      return "goal_found";
    case StopReason::kStepBudget:
      return "step_budget";
    case StopReason::kQueueEmpty:
      return "queue_empty";
  }
  return "?";
}

namespace {

struct QueueEntry {
  double log_cost;
  std::uint32_t id;  // insertion order; doubles as FIFO tie-break

  friend bool operator>(const QueueEntry& a, const QueueEntry& b) {
    return std::tie(a.log_cost, a.id) > std::tie(b.log_cost, b.id);
  }
};

using MinHeap =
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

}  // namespace

SearchRun run_search(const Environment& env, CostModel& model,
                     Rerooter& rerooter, std::uint64_t budget,
                     std::uint64_t seed) {
  if (budget == 0) throw std::invalid_argument("run_search: budget = 0");

  SearchRun run;
  run.seed = seed;
  run.final_counters.resize_for(env.max_clue_type());
  const bool observe_at_gen = env.observe_at_generation();

  NodeRecord root;
  root.state = env.root();
  root.signal = env.root_signal();
  NodeId root_id = run.arena.add(root);
  run.arena[root_id].log_cost = model.root_log_cost(run.arena);
  if (std::isnan(run.arena[root_id].log_cost)) {
    throw NumericFault(root_id, "cost model returned NaN at the root");
  }
  if (observe_at_gen) run.final_counters.count(root.signal);

  MinHeap queue;
  queue.push({run.arena[root_id].log_cost, root_id.v});
  run.peak_queue = 1;

  KahanSum cum_w, cum_wt;
  std::vector<ChildEdge> edges;
  std::uint64_t t = 0;

  while (t < budget && !queue.empty()) {
    NodeId id{queue.top().id};
    queue.pop();
    ++t;

    NodeRecord& rec = run.arena[id];
    run.visit_order.push_back(id);
    if (!observe_at_gen) run.final_counters.count(rec.signal);

    VisitContext ctx{rec,       rec.signal,    t,
                     run.final_counters, cum_w.value(), cum_wt.value()};
    WeightDecision d = rerooter.weight(ctx);
    if (t == 1) {
      // The root always carries a positive weight so c^r stays finite.
      if (d.weight == 0.0) d.weight = 1.0;
      if (d.input_weight == 0.0) d.input_weight = 1.0;
    }
    rec.visit_step = t;
    rec.reroot_weight = d.weight;
    cum_w.add(d.weight);
    cum_wt.add(d.input_weight);
    run.weights.push_back(d.weight);
    run.input_weights.push_back(d.input_weight);
    run.cum_weight.push_back(cum_w.value());
    run.cum_input_weight.push_back(cum_wt.value());
    run.clue_count.push_back(run.final_counters.total_clues);

    if (env.is_goal(rec.state)) {
      run.solution = Solution{id, t};
      run.stop_reason = StopReason::kGoalFound;
      break;
    }

    edges.clear();
    env.expand(rec.state, edges);
    run.arena[id].num_children = static_cast<std::uint32_t>(edges.size());
    for (const ChildEdge& e : edges) {
      const NodeRecord& parent = run.arena[id];
      NodeRecord child;
      child.parent = id;
      child.state = e.state;
      child.depth = parent.depth + 1;
      child.cond_prob = e.cond_prob;
      child.log_cond_prob = std::log(e.cond_prob);
      child.log_path_prob = parent.log_path_prob + child.log_cond_prob;
      child.slenderness = slenderness_update(parent.slenderness, e.cond_prob);
      child.signal = e.signal;
      NodeId child_id = run.arena.add(child);
      if (observe_at_gen) run.final_counters.count(e.signal);
      double log_cost = model.child_log_cost(run.arena, id, child_id);
      if (std::isnan(log_cost)) {
        throw NumericFault(child_id, "cost model returned NaN for node " +
                                         std::to_string(child_id.v));
      }
      run.arena[child_id].log_cost = log_cost;
      queue.push({log_cost, child_id.v});
    }
    run.peak_queue = std::max(run.peak_queue, queue.size());
  }

  if (run.stop_reason != StopReason::kGoalFound) {
    run.stop_reason =
        queue.empty() ? StopReason::kQueueEmpty : StopReason::kStepBudget;
  }
  return run;
}

std::vector<NodeId> reconstruct_path(const SearchRun& run, NodeId node) {
  if (!run.arena.contains(node)) {
    throw std::out_of_range("reconstruct_path: unknown node id");
  }
  std::vector<NodeId> path;
  for (NodeId cur = node; cur.valid(); cur = run.arena[cur].parent) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace rootlts
