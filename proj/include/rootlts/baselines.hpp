#pragma once

#include <optional>

#include "rootlts/search.hpp"

namespace rootlts {

enum class LtsVariant { kSop, kDop };

// Plain LTS: best-first search with the chosen monotone cost and no
// rerooting (the engine still assigns the default w_1 = 1).
SearchRun lts_search(const Environment& env, LtsVariant variant,
                     std::uint64_t budget, std::uint64_t seed);

// FIFO expansion; on binary trees a depth-d goal is visited within
// 2^{d+1} - 1 steps.
SearchRun bfs_breadth(const Environment& env, std::uint64_t budget);

// Per-node statistics of the PUCT tree.
struct PuctNodeStats {
  std::uint64_t visit_count = 0;  // m_t(n), traversals through the node
  double mean_reward = 0.0;       // X_t(n)
  double prior = 1.0;             // pi(n | parent)
};

struct PuctResult {
  std::uint64_t iterations = 0;  // root traversals performed
  std::optional<std::uint64_t> first_goal_iteration;
  std::uint64_t nodes_in_tree = 0;
  PuctNodeStats root;
  std::vector<PuctNodeStats> root_children;
};

// AlphaZero-style selection B(child) = X + c_puct * prior * sqrt(m(parent))
// / (m(child) + 1); one new node visited per traversal; a traversal's
// return is the sum of the rewards sitting on its path, each counted once,
// and is averaged into X along the path. Ties break by child order.
PuctResult puct_search(const Environment& env, double c_puct,
                       std::uint64_t iterations, std::uint64_t seed);

}  // namespace rootlts
