#include <doctest.h>

#include <cmath>

#include "rootlts/domains/clue_tree.hpp"
#include "rootlts/domains/trees.hpp"
#include "rootlts/search.hpp"
#include "rootlts/util.hpp"
#include "rootlts/verify.hpp"

using namespace rootlts;

TEST_CASE("self-counting checks on the uniform binary tree") {
  domains::DepthArityEnv env({2});
  std::vector<double> thetas{1.0, 3.0, 7.0, 15.0};
  auto rep = verify::check_sop_self_counting(env, 15.0, thetas);
  CHECK(rep.upper_ok);
  CHECK(rep.lower_ok);

  // lambda/pi counts exactly: 7 nodes of cost at most 7
  std::vector<double> costs{1, 3, 3, 7, 7, 7, 7, 15, 15};
  auto generic = verify::check_self_counting(costs, thetas);
  CHECK(generic.upper_ok);

  // 1 + d/pi is self-counting but looser
  std::vector<double> one_plus_dop{1, 3, 3, 9, 9, 9, 9};
  CHECK(verify::check_self_counting(one_plus_dop, thetas).upper_ok);
}

TEST_CASE("inverse probability distributions are self-counting") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 50 + rng.next_below(400);
    std::vector<double> raw(n);
    double sum = 0.0;
    for (auto& r : raw) {
      r = 0.01 + rng.next_double();
      sum += r;
    }
    std::vector<double> costs(n);
    for (std::size_t i = 0; i < n; ++i) costs[i] = sum / raw[i];
    std::vector<double> thetas{1, 2, 5, 10, 50, 200, 1000, 10000};
    CHECK(verify::check_self_counting(costs, thetas).upper_ok);
  }
}

namespace {

SearchRun catching_up_run() {
  // Edge probabilities chosen so the rooted segment costs
  // lambda/pi(n_{i+1} | n_i) = 1 + 1/p come out as (A, A, B, A, C, A).
  const double A = 10, B = 40, C = 20;
  domains::ChainEnv chain(
      {1 / (A - 1), 1 / (A - 1), 1 / (B - 1), 1 / (A - 1), 1 / (C - 1),
       1 / (A - 1)},
      6);
  CrltsCost model;
  ConstantRerooter one(1.0);
  return run_search(chain, model, one, 16, 0);
}

}  // namespace

TEST_CASE("catching-up scenario bounds") {
  SearchRun run = catching_up_run();
  REQUIRE(run.solution.has_value());
  CHECK(run.solution->step == 7);

  verify::SubtaskDecomposition d{{1, 2, 3, 4, 5, 6, 7}};
  REQUIRE(verify::is_valid_decomposition(run, d));

  auto thm3 = verify::bound_thm3(run, d);
  auto cor4 = verify::bound_cor4(run, d);
  CHECK(thm3.bound_value == doctest::Approx(170.0).epsilon(1e-9));
  CHECK(cor4.bound_value == doctest::Approx(240.0).epsilon(1e-9));
  CHECK(thm3.holds);
  CHECK(cor4.holds);
  CHECK(cor4.bound_value >= thm3.bound_value);

  // the trivial decomposition reduces thm3 and cor4 to eq14
  verify::SubtaskDecomposition trivial{{1, 7}};
  auto t3 = verify::bound_thm3(run, trivial);
  auto c4 = verify::bound_cor4(run, trivial);
  auto e14 = verify::bound_eq14(run, 7);
  CHECK(t3.bound_value == doctest::Approx(c4.bound_value));
  CHECK(c4.bound_value == doctest::Approx(e14.bound_value));

  // invalid decompositions are rejected
  verify::SubtaskDecomposition bad{{2, 7}};
  CHECK(!verify::is_valid_decomposition(run, bad));
  CHECK_THROWS_AS(verify::bound_thm3(run, bad), std::logic_error);
}

TEST_CASE("decomposition sampling and minimization") {
  SearchRun run = catching_up_run();
  auto decomps = verify::sample_decompositions(run);
  CHECK(decomps.size() >= 3);
  for (const auto& d : decomps) {
    CHECK(verify::is_valid_decomposition(run, d));
    CHECK(verify::bound_thm3(run, d).holds);
    CHECK(verify::bound_cor4(run, d).holds);
  }

  // a run without weighted interior nodes minimizes at {1, T}
  domains::ChainEnv chain({0.5, 0.5, 0.5}, 3);
  CrltsCost model;
  NullRerooter none;
  SearchRun plain = run_search(chain, model, none, 8, 0);
  auto [d, rep] = verify::min_decomposition(plain);
  CHECK(d.steps == std::vector<std::uint64_t>{1, 4});
  CHECK(rep.holds);
}

TEST_CASE("walkthrough analytic values") {
  auto w = verify::sokoban_walkthrough_values();
  CHECK(w.seg_lambda[0] == 733.0);
  CHECK(w.seg_lambda[1] == 7213.0);
  CHECK(w.seg_lambda[2] == 795181.0);
  CHECK(w.seg_lambda[3] == 195879469.0);
  CHECK(w.direct_total == w.seg_lambda[3]);
  CHECK(w.rooted_seg[0] == 31.0);
  CHECK(w.rooted_seg[1] == 229.0);
  CHECK(w.rooted_seg[2] == 393.0);
  CHECK(w.ladder_all == 141782592.0);
  CHECK(w.ladder_skip1 == 114954336.0);
  CHECK(w.ladder_skip12 == 4753728.0);
  CHECK(w.best_subset == std::vector<int>{3});
  CHECK(w.trace_bound <= 3011.0);
}

TEST_CASE("lower-bound sanity harness") {
  auto rep = verify::check_lower_bound_sanity(1, 1, 50, 2024);
  CHECK(rep.mean_steps >= 2.0);  // (q+1) 2^{a-1} = 2
  CHECK(rep.per_instance_ok);

  auto rep34 = verify::check_lower_bound_sanity(3, 4, 60, 77);
  CHECK(rep34.mean_lower_ok);
  CHECK(rep34.mean_upper_ok);
  CHECK(rep34.per_instance_ok);
  CHECK(rep34.mean_steps >= 20.0);
  CHECK(rep34.mean_steps <= 320.0);
}

TEST_CASE("cor6 requires a valid decomposition") {
  domains::ClueTreeEnv env({3, 4, 5});
  CrltsCost model;
  RobustRerooter rer(std::make_unique<UniformClueRerooter>(1));
  SearchRun run = run_search(env, model, rer, 3000, 0);
  REQUIRE(run.solution.has_value());
  for (const auto& d : verify::sample_decompositions(run)) {
    CHECK(verify::bound_cor6(run, d).holds);
  }
  verify::SubtaskDecomposition bad{{3}};
  CHECK_THROWS_AS(verify::bound_cor6(run, bad), std::logic_error);
}
