#include "rootlts/domains/clue_tree.hpp"

#include <set>
#include <stdexcept>

#include "rootlts/util.hpp"

namespace rootlts::domains {

ClueTreeEnv::ClueTreeEnv(const ClueTreeSpec& spec) : spec_(spec) {
  if (spec.a < 1 || spec.q < 1) {
    throw std::invalid_argument("ClueTreeEnv: a and q must be >= 1");
  }

  // Clue placement: uniform anchor among already-placed clues, uniform
  // relative depth in [1, a], uniform descent path; resample collisions.
  SplitMix64 rng = SplitMix64::stream(spec.seed, 1);
  clue_paths_.push_back("");  // the root is a clue
  std::set<std::string> used(clue_paths_.begin(), clue_paths_.end());
  for (std::uint32_t j = 1; j < spec.q; ++j) {
    std::string candidate;
    for (int tries = 0;; ++tries) {
      if (tries > 100000) {
        throw std::runtime_error("ClueTreeEnv: clue placement failed");
      }
      const std::string& anchor = clue_paths_[rng.next_below(j)];
      auto rel = static_cast<std::uint32_t>(1 + rng.next_below(spec.a));
      candidate = anchor;
      for (std::uint32_t k = 0; k < rel; ++k) {
        candidate.push_back(rng.next_bool() ? '1' : '0');
      }
      if (used.insert(candidate).second) break;
    }
    clue_paths_.push_back(candidate);
  }

  // Goal placement: uniform over all nodes within relative depth a below
  // some clue (the clues themselves included).
  std::set<std::string> candidates;
  for (const std::string& clue : clue_paths_) {
    std::vector<std::string> frontier{clue};
    candidates.insert(clue);
    for (std::uint32_t rel = 1; rel <= spec.a; ++rel) {
      std::vector<std::string> next;
      for (const std::string& p : frontier) {
        next.push_back(p + '0');
        next.push_back(p + '1');
      }
      candidates.insert(next.begin(), next.end());
      frontier = std::move(next);
    }
  }
  candidate_count_ = candidates.size();
  std::uint64_t pick = rng.next_below(candidates.size());
  auto it = candidates.begin();
  std::advance(it, static_cast<std::ptrdiff_t>(pick));
  goal_path_ = *it;

  // Root node of the lazily interned tree.
  Node root;
  root.depth = 0;
  root.on_goal_path = true;
  root.is_goal = goal_path_.empty();
  root.is_clue = true;
  for (std::uint16_t i = 0; i < clue_paths_.size(); ++i) {
    if (!clue_paths_[i].empty()) root.live_clues.push_back(i);
  }
  pool_.push_back(std::move(root));
}

Signal ClueTreeEnv::root_signal() const {
  Signal s;
  s.clue_type = 1;
  return s;
}

StateId ClueTreeEnv::make_child(StateId parent, int bit) const {
  const Node& p = pool_[parent];
  Node child;
  child.depth = p.depth + 1;
  char b = bit ? '1' : '0';
  for (std::uint16_t idx : p.live_clues) {
    const std::string& path = clue_paths_[idx];
    if (path[p.depth] != b) continue;
    if (path.size() == child.depth) {
      child.is_clue = true;
    } else {
      child.live_clues.push_back(idx);
    }
  }
  child.on_goal_path =
      p.on_goal_path && goal_path_.size() >= child.depth && goal_path_[p.depth] == b;
  child.is_goal = child.on_goal_path && goal_path_.size() == child.depth;
  StateId id = pool_.size();
  pool_.push_back(std::move(child));
  return id;
}

void ClueTreeEnv::expand(StateId state, std::vector<ChildEdge>& out) const {
  std::lock_guard<std::mutex> lock(mu_);
  for (int bit = 0; bit < 2; ++bit) {
    if (pool_[state].child[bit] == kNoChild) {
      StateId c = make_child(state, bit);
      pool_[state].child[bit] = c;
    }
    StateId c = pool_[state].child[bit];
    ChildEdge e{c, 0.5, {}};
    if (pool_[c].is_clue) e.signal.clue_type = 1;
    out.push_back(e);
  }
}

bool ClueTreeEnv::is_goal(StateId state) const {
  std::lock_guard<std::mutex> lock(mu_);
  return pool_[state].is_goal;
}

}  // namespace rootlts::domains
