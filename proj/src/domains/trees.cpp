#include "rootlts/domains/trees.hpp"

#include <stdexcept>

namespace rootlts::domains {

ChainEnv::ChainEnv(std::vector<double> probs,
                   std::optional<std::uint32_t> goal_depth,
                   std::vector<std::int32_t> clue_type_by_depth)
    : probs_(std::move(probs)),
      goal_depth_(goal_depth),
      clue_type_by_depth_(std::move(clue_type_by_depth)) {
  for (double p : probs_) {
    if (!(p > 0.0) || p > 1.0) {
      throw std::invalid_argument("ChainEnv: probability outside (0,1]");
    }
    if (p < 1.0) proper_ = false;
  }
  for (std::int32_t z : clue_type_by_depth_) {
    if (z > max_clue_type_) max_clue_type_ = z;
  }
}

Signal ChainEnv::root_signal() const {
  Signal s;
  if (!clue_type_by_depth_.empty()) s.clue_type = clue_type_by_depth_[0];
  return s;
}

void ChainEnv::expand(StateId state, std::vector<ChildEdge>& out) const {
  auto depth = static_cast<std::size_t>(state);
  if (depth >= probs_.size()) return;
  ChildEdge e;
  e.state = state + 1;
  e.cond_prob = probs_[depth];
  if (depth + 1 < clue_type_by_depth_.size()) {
    e.signal.clue_type = clue_type_by_depth_[depth + 1];
  }
  out.push_back(e);
}

bool ChainEnv::is_goal(StateId state) const {
  return goal_depth_ && state == *goal_depth_;
}

DepthArityEnv::DepthArityEnv(std::vector<std::uint32_t> arities)
    : arities_(std::move(arities)) {
  if (arities_.empty()) throw std::invalid_argument("DepthArityEnv: empty");
  for (std::uint32_t k : arities_) {
    if (k < 1) throw std::invalid_argument("DepthArityEnv: arity < 1");
  }
}

void DepthArityEnv::expand(StateId state, std::vector<ChildEdge>& out) const {
  auto depth = static_cast<std::size_t>(state);
  std::uint32_t k = arities_[std::min(depth, arities_.size() - 1)];
  for (std::uint32_t i = 0; i < k; ++i) {
    out.push_back({state + 1, 1.0 / k, {}});
  }
}

StateId RandomProperTreeEnv::root() const {
  return SplitMix64::stream(seed_, 0).next_u64() | 1u;
}

void RandomProperTreeEnv::expand(StateId state,
                                 std::vector<ChildEdge>& out) const {
  SplitMix64 g(state);
  std::uint32_t arity =
      1 + static_cast<std::uint32_t>(g.next_below(max_arity_));
  std::vector<double> raw(arity);
  double sum = 0.0;
  for (double& r : raw) {
    r = 0.05 + g.next_double();
    sum += r;
  }
  for (std::uint32_t i = 0; i < arity; ++i) {
    StateId child = SplitMix64::stream(state, i + 1).next_u64() | 1u;
    out.push_back({child, raw[i] / sum, {}});
  }
}

DChainEnv::DChainEnv(std::uint32_t D) : d_(D) {
  if (D < 2) throw std::invalid_argument("DChainEnv: D < 2");
}

double DChainEnv::left_reward(std::uint32_t depth) const {
  return static_cast<double>(d_ - depth) / static_cast<double>(d_);
}

void DChainEnv::expand(StateId state, std::vector<ChildEdge>& out) const {
  if (state == kGeneric) {
    out.push_back({kGeneric, 0.5, {}});
    out.push_back({kGeneric, 0.5, {}});
    return;
  }
  auto depth = static_cast<std::uint32_t>(state - 1);
  if (depth >= d_) {  // below the goal the tree continues unrewarded
    out.push_back({kGeneric, 0.5, {}});
    out.push_back({kGeneric, 0.5, {}});
    return;
  }
  ChildEdge left{kGeneric, 0.5, {}};
  left.signal.reward = left_reward(depth + 1);
  ChildEdge right{state + 1, 0.5, {}};
  if (depth + 1 == d_) right.signal.reward = 1.0;
  out.push_back(left);
  out.push_back(right);
}

bool DChainEnv::is_goal(StateId state) const { return state == 1 + d_; }

MisleadingRewardEnv::MisleadingRewardEnv(double alpha, std::uint32_t goal_depth)
    : alpha_(alpha), goal_depth_(goal_depth) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("MisleadingRewardEnv: alpha outside (0,1)");
  }
  if (goal_depth < 2) {
    throw std::invalid_argument("MisleadingRewardEnv: goal depth < 2");
  }
}

void MisleadingRewardEnv::expand(StateId state,
                                 std::vector<ChildEdge>& out) const {
  if (state == kGeneric) {
    out.push_back({kGeneric, 0.5, {}});
    out.push_back({kGeneric, 0.5, {}});
    return;
  }
  auto depth = static_cast<std::uint32_t>(state - 1);
  if (depth == 0) {
    ChildEdge first{kGeneric, 0.5, {}};
    first.signal.reward = alpha_;  // n_2, visited before n_3 on ties
    ChildEdge second{state + 1, 0.5, {}};
    out.push_back(first);
    out.push_back(second);
    return;
  }
  if (depth >= goal_depth_) {
    out.push_back({kGeneric, 0.5, {}});
    out.push_back({kGeneric, 0.5, {}});
    return;
  }
  ChildEdge on_path{state + 1, 0.5, {}};
  if (depth + 1 == goal_depth_) on_path.signal.reward = 1.0;
  out.push_back(on_path);
  out.push_back({kGeneric, 0.5, {}});
}

bool MisleadingRewardEnv::is_goal(StateId state) const {
  return state == 1 + goal_depth_;
}

}  // namespace rootlts::domains
