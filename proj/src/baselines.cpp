#include "rootlts/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace rootlts {

SearchRun lts_search(const Environment& env, LtsVariant variant,
                     std::uint64_t budget, std::uint64_t seed) {
  NullRerooter none;
  if (variant == LtsVariant::kSop) {
    SopCost model;
    return run_search(env, model, none, budget, seed);
  }
  DopCost model;
  return run_search(env, model, none, budget, seed);
}

SearchRun bfs_breadth(const Environment& env, std::uint64_t budget) {
  BreadthCost model;
  NullRerooter none;
  return run_search(env, model, none, budget, 0);
}

namespace {

struct PuctNode {
  StateId state = 0;
  double prior = 1.0;
  double reward = 0.0;  // reward of the generating transition
  std::uint64_t m = 0;
  double return_sum = 0.0;
  bool expanded = false;
  bool goal = false;
  std::vector<std::uint32_t> children;

  double mean() const { return m ? return_sum / static_cast<double>(m) : 0.0; }
};

}  // namespace

PuctResult puct_search(const Environment& env, double c_puct,
                       std::uint64_t iterations, std::uint64_t) {
  if (!(c_puct > 0.0)) throw std::invalid_argument("puct_search: c_puct <= 0");

  std::vector<PuctNode> tree;
  tree.push_back({env.root(), 1.0, 0.0, 0, 0.0, false,
                  env.is_goal(env.root()), {}});

  PuctResult res;
  std::vector<std::uint32_t> path;
  std::vector<ChildEdge> edges;

  for (std::uint64_t iter = 1; iter <= iterations; ++iter) {
    path.clear();
    std::uint32_t cur = 0;
    while (true) {
      path.push_back(cur);
      if (tree[cur].m == 0) break;  // fresh node: this traversal visits it
      if (!tree[cur].expanded) {
        edges.clear();
        env.expand(tree[cur].state, edges);
        for (const ChildEdge& e : edges) {
          tree.push_back({e.state, e.cond_prob, e.signal.reward, 0, 0.0,
                          false, env.is_goal(e.state), {}});
          tree[cur].children.push_back(
              static_cast<std::uint32_t>(tree.size() - 1));
        }
        tree[cur].expanded = true;
      }
      if (tree[cur].children.empty()) break;  // dead end, revisit
      double sqrt_m = std::sqrt(static_cast<double>(tree[cur].m));
      std::uint32_t best = tree[cur].children[0];
      double best_b = -1.0;
      for (std::uint32_t ch : tree[cur].children) {
        const PuctNode& node = tree[ch];
        double b = node.mean() + c_puct * node.prior * sqrt_m /
                                     (static_cast<double>(node.m) + 1.0);
        if (b > best_b) {
          best_b = b;
          best = ch;
        }
      }
      cur = best;
    }

    double ret = 0.0;
    for (std::uint32_t n : path) ret += tree[n].reward;
    for (std::uint32_t n : path) {
      ++tree[n].m;
      tree[n].return_sum += ret;
    }
    res.iterations = iter;
    if (tree[cur].goal && tree[cur].m == 1 && !res.first_goal_iteration) {
      res.first_goal_iteration = iter;
      break;
    }
  }

  res.nodes_in_tree = tree.size();
  res.root = {tree[0].m, tree[0].mean(), tree[0].prior};
  for (std::uint32_t ch : tree[0].children) {
    res.root_children.push_back({tree[ch].m, tree[ch].mean(), tree[ch].prior});
  }
  return res;
}

}  // namespace rootlts
