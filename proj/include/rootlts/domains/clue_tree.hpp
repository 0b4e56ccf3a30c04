#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <vector>

#include "rootlts/env.hpp"

namespace rootlts::domains {

// Infinite perfect binary tree with uniform policy and q clue nodes: the
// root is a clue; every other clue has a clue ancestor at relative depth in
// [1, a]. One goal node placed uniformly over the set of nodes within
// relative depth a below some clue.
struct ClueTreeSpec {
  std::uint32_t a = 1;  // max relative clue depth
  std::uint32_t q = 1;  // number of clue nodes
  std::uint64_t seed = 0;
};

class ClueTreeEnv final : public Environment {
 public:
  explicit ClueTreeEnv(const ClueTreeSpec& spec);

  StateId root() const override { return 0; }
  void expand(StateId state, std::vector<ChildEdge>& out) const override;
  bool is_goal(StateId state) const override;
  bool proper_policy() const override { return true; }
  Signal root_signal() const override;

  // Placement introspection, for tests. Paths are '0'/'1' strings from the
  // root; the root's path is empty.
  const std::vector<std::string>& clue_paths() const { return clue_paths_; }
  const std::string& goal_path() const { return goal_path_; }
  std::size_t candidate_count() const { return candidate_count_; }

 private:
  struct Node {
    std::uint32_t depth = 0;
    bool on_goal_path = false;
    bool is_goal = false;
    bool is_clue = false;
    std::vector<std::uint16_t> live_clues;  // clue indices passing below
    StateId child[2] = {kNoChild, kNoChild};
  };
  static constexpr StateId kNoChild = ~StateId{0};

  StateId make_child(StateId parent, int bit) const;

  ClueTreeSpec spec_;
  std::vector<std::string> clue_paths_;
  std::string goal_path_;
  std::size_t candidate_count_ = 0;

  mutable std::mutex mu_;
  mutable std::vector<Node> pool_;
};

}  // namespace rootlts::domains
