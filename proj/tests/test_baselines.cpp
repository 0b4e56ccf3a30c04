#include <doctest.h>

#include "rootlts/baselines.hpp"
#include "rootlts/domains/clue_tree.hpp"
#include "rootlts/domains/trees.hpp"

using namespace rootlts;
using namespace rootlts::domains;

TEST_CASE("plain search on a probability-1 chain") {
  ChainEnv env({1, 1, 1, 1, 1, 1, 1, 1, 1}, 9);
  SearchRun run = lts_search(env, LtsVariant::kSop, 100, 0);
  REQUIRE(run.solution.has_value());
  CHECK(run.solution->step == 10);

  SearchRun dop = lts_search(env, LtsVariant::kDop, 100, 0);
  REQUIRE(dop.solution.has_value());
  CHECK(dop.solution->step == 10);
}

TEST_CASE("clue trees: rerooting beats the plain slenderness search") {
  int wins = 0, ties = 0;
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    ClueTreeEnv env({4, 6, 1000 + seed});
    SearchRun plain = lts_search(env, LtsVariant::kSop, 200000, 0);
    CrltsCost model;
    PerCountRerooter rer;
    SearchRun rooted = run_search(env, model, rer, 200000, 0);
    REQUIRE(rooted.solution.has_value());
    std::uint64_t plain_t =
        plain.solution ? plain.solution->step : plain.steps();
    if (plain_t > rooted.solution->step) ++wins;
    if (plain_t == rooted.solution->step) ++ties;
  }
  CHECK(wins + ties >= 6);  // rerooting should rarely lose
  CHECK(wins >= 4);
}

TEST_CASE("breadth-first baseline") {
  ChainEnv at_root({1.0}, 0);
  SearchRun r0 = bfs_breadth(at_root, 10);
  REQUIRE(r0.solution.has_value());
  CHECK(r0.solution->step == 1);

  // goal at depth 5 of a binary tree: at most 2^6 - 1 visits
  MisleadingRewardEnv env(0.5, 5);
  SearchRun run = bfs_breadth(env, 100);
  REQUIRE(run.solution.has_value());
  CHECK(run.solution->step <= 63);

  // breadth-first ignores rewards: the rightmost depth-8 chain node of the
  // reward tree is the last node of its level
  DChainEnv dc(8);
  SearchRun deep = bfs_breadth(dc, 1 << 10);
  REQUIRE(deep.solution.has_value());
  CHECK(deep.solution->step == (1 << 9) - 1);
}

TEST_CASE("PUCT selection on a fresh parent picks the first child") {
  DChainEnv env(4);
  PuctResult res = puct_search(env, 2.0, 2, 0);
  // iteration 1 visits the root; iteration 2 expands the children with
  // B = 0 + 2 * 0.5 * 1/1 = 1 for both and takes the first.
  REQUIRE(res.root_children.size() == 2);
  CHECK(res.root.visit_count == 2);
  CHECK(res.root_children[0].visit_count == 1);
  CHECK(res.root_children[1].visit_count == 0);
}

TEST_CASE("PUCT visit accounting") {
  DChainEnv env(5);
  PuctResult res = puct_search(env, 2.0, 500, 0);
  std::uint64_t child_sum = 0;
  for (const auto& c : res.root_children) child_sum += c.visit_count;
  CHECK(child_sum == res.root.visit_count - 1);
}

TEST_CASE("PUCT stalls on the misleading reward, rerooting does not") {
  MisleadingRewardEnv env(0.5, 6);
  PuctResult res = puct_search(env, 2.0, 20000, 0);
  if (res.first_goal_iteration) {
    CHECK(*res.first_goal_iteration >= 256);
  } else {
    CHECK(res.iterations >= 256);
  }

  CrltsCost model;
  RewardRerooter rer;
  SearchRun run = run_search(env, model, rer, 400, 0);
  REQUIRE(run.solution.has_value());
  CHECK(run.solution->step <= 384);  // (1 + alpha) 2^{d+1}
}
