#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rootlts/search.hpp"

namespace rootlts::verify {

// Increasing visit steps T_1 = 1 < T_2 < ... < T_m whose nodes form an
// ancestor chain ending at the target node.
struct SubtaskDecomposition {
  std::vector<std::uint64_t> steps;

  friend bool operator==(const SubtaskDecomposition&,
                         const SubtaskDecomposition&) = default;
};

enum class BoundKind { kThm3, kCor4, kEq14, kCor6, kEq12 };
const char* to_string(BoundKind k);

struct BoundReport {
  std::uint64_t t_actual = 0;
  double bound_value = 0.0;
  BoundKind kind = BoundKind::kThm3;
  SubtaskDecomposition decomposition;
  bool holds = false;  // t_actual <= bound_value, with 1-ulp slack
};

// lambda/pi(desc | anc) by direct summation along the arena path, linear.
double rooted_between(const NodeArena& arena, NodeId anc, NodeId desc);

bool is_valid_decomposition(const SearchRun& run,
                            const SubtaskDecomposition& d);

// T <= sum_j (W_{<T_{j+1}} - W_{<T_j}) max_{j<=i<m} rooted(i -> i+1)/w_{T_i}
BoundReport bound_thm3(const SearchRun& run, const SubtaskDecomposition& d);
// T <= W_{<T} max_i rooted(i -> i+1)/w_{T_i}
BoundReport bound_cor4(const SearchRun& run, const SubtaskDecomposition& d);
// Corollary 4 at {1, T}: T <= W_{<T}/w_1 * lambda/pi(n_T)
BoundReport bound_eq14(const SearchRun& run, std::uint64_t target_step);
// Robust-scheme bound:
// T <= (1 + ln(W~_{<T}/w~_1)) max_i (W~_{<=T_i}/w~_{T_i}) rooted(i -> i+1)
BoundReport bound_cor6(const SearchRun& run, const SubtaskDecomposition& d);

// Minimizes the Corollary 4 bound over decompositions built from
// positive-weight visited ancestors of the target, preferring fewer
// segments among minimizers.
std::pair<SubtaskDecomposition, BoundReport> min_decomposition(
    const SearchRun& run);

// {1,T}, all weighted ancestors, each single-skip variant, DP minimizer.
std::vector<SubtaskDecomposition> sample_decompositions(const SearchRun& run);

// t <= lambda/pi(n_t) at every step; meaningful for sop-model runs.
bool check_lemma1(const SearchRun& run);

struct TreeToPathReport {
  bool ok = true;
  std::size_t pairs_checked = 0;
  double max_rel_err = 0.0;
};
// max cost over visits in (j, t] equals max cost over path nodes strictly
// after n_j up to n_t, for sampled visited pairs n_j < n_t.
TreeToPathReport check_tree_to_path(const SearchRun& run, std::size_t pairs,
                                    std::uint64_t seed, double tol);

struct SelfCountingReport {
  bool upper_ok = true;   // |{c <= theta}| <= theta
  bool lower_ok = true;   // count > (theta-1)/B, proper-policy lambda/pi only
  double worst_theta = 0.0;
  std::string detail;
};

// Generic check over explicit linear costs.
SelfCountingReport check_self_counting(std::span<const double> costs,
                                       std::span<const double> thetas);

// Enumerates {n : lambda/pi(n) <= theta_max} of a proper-policy environment
// with independent linear-space arithmetic and checks both sides of the
// slenderness count bounds at each theta.
SelfCountingReport check_sop_self_counting(const Environment& env,
                                           double theta_max,
                                           std::span<const double> thetas);

struct LowerBoundReport {
  double mean_steps = 0.0;
  double lower = 0.0;   // (q+1) 2^{a-1}
  double upper = 0.0;   // 4 (q+1) 2^a
  bool mean_lower_ok = false;
  bool mean_upper_ok = false;
  bool per_instance_ok = true;  // T <= q (2^{a+1} - 1) on every run
};
// Runs rerooted search with known-q uniform clue weights over seeded
// clue-tree instances.
LowerBoundReport check_lower_bound_sanity(std::uint32_t a, std::uint32_t q,
                                          std::uint32_t trials,
                                          std::uint64_t seed);

// Random explicit trees for the oracles; BFS construction, so parents
// always precede children in the arena.
NodeArena random_tree(std::uint64_t seed, std::size_t max_nodes,
                      std::uint32_t max_arity, bool proper);
// Per-node weights drawn from a menu; index 0 (root) is forced to 1.
std::vector<double> random_weights(std::uint64_t seed, std::size_t n,
                                   std::span<const double> menu);

// Analytic values of the shipped Sokoban walkthrough: slenderness costs at
// the four segment ends, rooted segment costs, clue-count estimates, and
// the decomposition bound ladder.
struct SokobanWalkthrough {
  double seg_lambda[4] = {};   // 733, 7213, 795181, 195879469
  double direct_total = 0.0;   // rooted over all 25 edges; equals seg_lambda[3]
  double rooted_seg[3] = {};   // 31, 229, 393
  std::uint64_t clue_estimate[3] = {};  // 1143408, 125496, 3024
  double ladder_all = 0.0;     // 141782592
  double ladder_skip1 = 0.0;   // 114954336
  double ladder_skip12 = 0.0;  // 4753728
  std::vector<int> best_subset;  // clue indices kept by the minimizer (1-based types)
  double trace_bound = 0.0;    // 3.83 max{733, 9*31, 2*229, 2*393} <= 3011
};
SokobanWalkthrough sokoban_walkthrough_values();
const std::vector<std::vector<int>>& sokoban_walkthrough_branch_counts();

}  // namespace rootlts::verify
