#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rootlts/env.hpp"
#include "rootlts/util.hpp"

namespace rootlts::domains {

// Finite chain: the node at depth i has one child with probability probs[i].
// Optional goal depth; optional clue types per depth for instrumentation.
class ChainEnv final : public Environment {
 public:
  explicit ChainEnv(std::vector<double> probs,
                    std::optional<std::uint32_t> goal_depth = {},
                    std::vector<std::int32_t> clue_type_by_depth = {});

  StateId root() const override { return 0; }
  void expand(StateId state, std::vector<ChildEdge>& out) const override;
  bool is_goal(StateId state) const override;
  bool proper_policy() const override { return proper_; }
  Signal root_signal() const override;
  std::int32_t max_clue_type() const override { return max_clue_type_; }

 private:
  std::vector<double> probs_;
  std::optional<std::uint32_t> goal_depth_;
  std::vector<std::int32_t> clue_type_by_depth_;
  std::int32_t max_clue_type_ = 1;
  bool proper_ = true;
};

// Infinite tree where the arity depends only on the depth (the last entry
// repeats); uniform policy.
class DepthArityEnv final : public Environment {
 public:
  explicit DepthArityEnv(std::vector<std::uint32_t> arities);

  StateId root() const override { return 0; }
  void expand(StateId state, std::vector<ChildEdge>& out) const override;
  bool is_goal(StateId) const override { return false; }
  bool proper_policy() const override { return true; }

 private:
  std::vector<std::uint32_t> arities_;
};

// Infinite random tree with a proper policy; arities in [1, max_arity] and
// conditional probabilities are derived deterministically from a per-node
// gene, so expansion is a pure function of the state.
class RandomProperTreeEnv final : public Environment {
 public:
  RandomProperTreeEnv(std::uint64_t seed, std::uint32_t max_arity)
      : seed_(seed), max_arity_(max_arity) {}

  StateId root() const override;
  void expand(StateId state, std::vector<ChildEdge>& out) const override;
  bool is_goal(StateId) const override { return false; }
  bool proper_policy() const override { return true; }

 private:
  std::uint64_t seed_;
  std::uint32_t max_arity_;
};

// Infinite perfect binary tree with uniform policy. The rightmost chain of
// depth D ends at the goal with reward 1; the left child at depth i carries
// reward (D-i)/D, 0 at the last.
class DChainEnv final : public Environment {
 public:
  explicit DChainEnv(std::uint32_t D);

  StateId root() const override { return 1; }  // chain node at depth 0
  void expand(StateId state, std::vector<ChildEdge>& out) const override;
  bool is_goal(StateId state) const override;
  bool proper_policy() const override { return true; }

  double left_reward(std::uint32_t depth) const;  // (D - depth)/D

 private:
  static constexpr StateId kGeneric = 0;
  std::uint32_t d_;
};

// Infinite perfect binary tree with uniform policy; reward alpha at the
// first child of the root, goal with reward 1 at the leftmost depth-d
// descendant of the second child.
class MisleadingRewardEnv final : public Environment {
 public:
  MisleadingRewardEnv(double alpha, std::uint32_t goal_depth);

  StateId root() const override { return 1; }  // path node at depth 0
  void expand(StateId state, std::vector<ChildEdge>& out) const override;
  bool is_goal(StateId state) const override;
  bool proper_policy() const override { return true; }

 private:
  static constexpr StateId kGeneric = 0;
  double alpha_;
  std::uint32_t goal_depth_;
};

}  // namespace rootlts::domains
