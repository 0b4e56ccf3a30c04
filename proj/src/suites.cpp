#include <algorithm>
#include <cmath>

#include "rootlts/baselines.hpp"
#include "rootlts/bench.hpp"
#include "rootlts/domains/clue_tree.hpp"
#include "rootlts/domains/sokoban.hpp"
#include "rootlts/domains/trees.hpp"
#include "rootlts/util.hpp"

namespace rootlts::bench {

namespace {

constexpr std::uint64_t kSuiteSeed = 0x5EEDBA5Eu;

struct Suite {
  std::string suite;
  std::vector<CheckResult>& out;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    out.push_back({suite, name, pass, detail});
  }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// Rerooter replaying a fixed per-step weight table; used by synthetic runs.
class TableRerooter final : public Rerooter {
 public:
  explicit TableRerooter(std::vector<double> w) : w_(std::move(w)) {}
  WeightDecision weight(const VisitContext& ctx) override {
    double v = ctx.step <= w_.size() ? w_[ctx.step - 1] : 0.0;
    return {v, v};
  }

 private:
  std::vector<double> w_;
};

SearchRun cluetree_crlts_run(std::uint32_t a, std::uint32_t q,
                             std::uint64_t seed, Rerooter& rer,
                             std::uint64_t budget) {
  domains::ClueTreeEnv env({a, q, seed});
  CrltsCost model;
  return run_search(env, model, rer, budget, seed);
}

bool near(double a, double b, double rel = 1e-9) {
  return rel_diff(a, b) <= rel;
}

// ---------------------------------------------------------------------------

void suite_appendix_g(Suite& s) {
  auto w = verify::sokoban_walkthrough_values();
  auto exact = [](double v, long long expect) {
    return std::llround(v) == expect && std::fabs(v - expect) < 0.5;
  };

  s.add("slenderness cost at the four segment ends",
        exact(w.seg_lambda[0], 733) && exact(w.seg_lambda[1], 7213) &&
            exact(w.seg_lambda[2], 795181) &&
            exact(w.seg_lambda[3], 195879469),
        num(w.seg_lambda[0]) + " " + num(w.seg_lambda[1]) + " " +
            num(w.seg_lambda[2]) + " " + num(w.seg_lambda[3]));
  s.add("telescoped chain equals direct evaluation",
        w.direct_total == w.seg_lambda[3], num(w.direct_total));
  s.add("rooted segment costs",
        exact(w.rooted_seg[0], 31) && exact(w.rooted_seg[1], 229) &&
            exact(w.rooted_seg[2], 393),
        num(w.rooted_seg[0]) + " " + num(w.rooted_seg[1]) + " " +
            num(w.rooted_seg[2]));
  s.add("clue count estimates",
        w.clue_estimate[0] == 1143408 && w.clue_estimate[1] == 125496 &&
            w.clue_estimate[2] == 3024,
        std::to_string(w.clue_estimate[0]) + " " +
            std::to_string(w.clue_estimate[1]) + " " +
            std::to_string(w.clue_estimate[2]));
  s.add("decomposition bound ladder",
        exact(w.ladder_all, 141782592) && exact(w.ladder_skip1, 114954336) &&
            exact(w.ladder_skip12, 4753728),
        num(w.ladder_all) + " " + num(w.ladder_skip1) + " " +
            num(w.ladder_skip12));
  s.add("minimizer keeps only the type-3 clue",
        w.best_subset == std::vector<int>{3});
  s.add("measured-trace bound below 3011",
        w.trace_bound <= 3011.0 && near(w.trace_bound, 3.83 * 786.0, 1e-12),
        num(w.trace_bound));

  // The same decomposition menu on a real run over the walkthrough chain.
  std::vector<double> probs;
  std::vector<std::int32_t> clue_types(26, 0);
  for (const auto& seg : verify::sokoban_walkthrough_branch_counts()) {
    for (int b : seg) probs.push_back(1.0 / b);
  }
  clue_types[9] = 1;
  clue_types[13] = 2;
  clue_types[18] = 3;
  domains::ChainEnv chain(probs, 25, clue_types);
  CrltsCost model;
  std::vector<double> wz{0.0};
  for (int z = 1; z <= 3; ++z) {
    wz.push_back(1.0 / static_cast<double>(w.clue_estimate[z - 1]));
  }
  PerTypeFixedRerooter rer(wz);
  SearchRun run = run_search(chain, model, rer, 64, 0);
  auto [dp, rep] = verify::min_decomposition(run);
  bool picked = dp.steps == std::vector<std::uint64_t>{1, 19, 26};
  s.add("run-trace minimizer skips type-1 and type-2 clues",
        run.solution.has_value() && picked && rep.holds,
        "steps " + std::to_string(dp.steps.size()));
}

// ---------------------------------------------------------------------------

void suite_sokoban_sim(Suite& s) {
  domains::SokobanLevel level =
      domains::SokobanLevel::parse(domains::kStandinLevel);
  s.add("stand-in level has 89 floor cells", level.floor_cells() == 89,
        std::to_string(level.floor_cells()));
  s.add("stand-in level has 4 boxes and 4 goals",
        level.boxes_start.size() == 4 && level.goals.size() == 4);

  // Scripted 25-action solution, replayed through the policy's legal moves.
  {
    domains::SokobanEnv env(level);
    domains::SokobanBoard cur{level.player_start, level.boxes_start};
    domains::SokobanBoard prev;
    bool have_prev = false;
    bool ok = true;
    std::size_t actions = 0;
    for (const char* p = domains::kStandinSolution; *p && ok; ++p) {
      auto children = env.legal_moves(cur, have_prev ? &prev : nullptr);
      bool found = false;
      for (const auto& ch : children) {
        if (domains::move_char(ch.move) == *p) {
          prev = cur;
          have_prev = true;
          cur = ch.board;
          found = true;
          break;
        }
      }
      ok = found;
      ++actions;
    }
    ok = ok && actions == 25 && all_boxes_on_goals(level, cur);
    s.add("scripted 25-action plan is legal and solves the level", ok,
          std::to_string(actions) + " actions");
  }

  // Rerooted search with the per-type scheme.
  ExperimentConfig cfg;
  cfg.domain = "sokoban";
  cfg.algo = "rootlts";
  cfg.scheme = "per-count-by-type";
  cfg.budget = 2000000;
  cfg.seed = 1;
  auto env = make_env(cfg);
  CrltsCost model;
  PerTypeCountRerooter rer;
  SearchRun run = run_search(*env, model, rer, cfg.budget, cfg.seed);
  s.add("rerooted search solves the stand-in level", run.solution.has_value(),
        run.solution ? "T = " + std::to_string(run.solution->step)
                     : "budget exhausted");
  if (!run.solution) return;

  std::uint64_t T = run.solution->step;
  double w_lt = run.cum_weight_lt(T);
  double cap = 1.0 + 3.0 * std::log(static_cast<double>(T) / 3.0);
  s.add("W_{<T} <= 1 + 3 ln(T/3)", w_lt <= ulp_up(cap),
        num(w_lt) + " vs " + num(cap));

  auto [dp, dp_rep] = verify::min_decomposition(run);
  auto thm3 = verify::bound_thm3(run, dp);
  s.add("DP-minimized decomposition bound holds", dp_rep.holds && thm3.holds,
        "thm3 " + num(thm3.bound_value) + ", cor4 " + num(dp_rep.bound_value));

  bool all_hold = true;
  for (const auto& d : verify::sample_decompositions(run)) {
    all_hold = all_hold && verify::bound_thm3(run, d).holds &&
               verify::bound_cor4(run, d).holds;
  }
  all_hold = all_hold && verify::bound_eq14(run, T).holds;
  s.add("sampled decomposition bounds hold", all_hold);

  std::uint64_t lts_budget = std::max<std::uint64_t>(2 * T, 20000);
  SearchRun lts = lts_search(*make_env(cfg), LtsVariant::kSop, lts_budget, 1);
  bool slower = !lts.solution || lts.solution->step >= 2 * T;
  s.add("plain slenderness search needs at least 2x the visits", slower,
        lts.solution ? "T_lts = " + std::to_string(lts.solution->step) +
                           " vs 2x" + std::to_string(T)
                     : "unsolved within " + std::to_string(lts_budget));
}

// ---------------------------------------------------------------------------

void suite_cluetree(Suite& s, bool quick) {
  const std::uint32_t seeds = quick ? 10 : 100;
  double mean_48 = 0.0;

  for (std::uint32_t a : {3u, 4u, 5u}) {
    for (std::uint32_t q : {4u, 8u, 16u}) {
      double pow_a1 = std::ldexp(1.0, static_cast<int>(a) + 1);
      std::uint64_t budget = static_cast<std::uint64_t>(q * pow_a1) + 64;
      std::uint32_t ok_ind = 0, ok_unif = 0;
      KahanSum sum_unif;
      for (std::uint32_t i = 0; i < seeds; ++i) {
        std::uint64_t seed = SplitMix64::stream(kSuiteSeed + a * 31 + q, i).next_u64();
        {
          UniformClueRerooter ind(1);  // w_t = 1{clue}
          SearchRun run = cluetree_crlts_run(a, q, seed, ind, budget);
          if (run.solution) {
            std::uint64_t T = run.solution->step;
            std::uint64_t q_T = run.clue_count[T - 1];
            if (static_cast<double>(T) < static_cast<double>(q_T) * pow_a1) {
              ++ok_ind;
            }
          }
        }
        {
          UniformClueRerooter unif(q);  // w_t = 1{clue}/q
          SearchRun run = cluetree_crlts_run(a, q, seed, unif, budget);
          if (run.solution) {
            auto T = static_cast<double>(run.solution->step);
            sum_unif.add(T);
            if (T <= ulp_up(q * (pow_a1 - 1.0))) ++ok_unif;
          }
        }
      }
      s.add("a=" + std::to_string(a) + " q=" + std::to_string(q) +
                ": T < q_T 2^{a+1} with indicator weights",
            ok_ind == seeds, std::to_string(ok_ind) + "/" + std::to_string(seeds));
      s.add("a=" + std::to_string(a) + " q=" + std::to_string(q) +
                ": T <= q(2^{a+1}-1) with known-q weights",
            ok_unif == seeds,
            std::to_string(ok_unif) + "/" + std::to_string(seeds));
      if (a == 4 && q == 8) mean_48 = sum_unif.value() / seeds;
    }
  }
  s.add("mean T at (a=4,q=8) >= (q+1) 2^{a-1} = 72", mean_48 >= 72.0,
        "mean " + num(mean_48));

  auto lb = verify::check_lower_bound_sanity(3, 4, quick ? 60 : 500,
                                             kSuiteSeed + 9);
  s.add("lower-bound sanity at (a=3,q=4): mean within [20, 320]",
        lb.mean_lower_ok && lb.mean_upper_ok && lb.per_instance_ok,
        "mean " + num(lb.mean_steps));
}

// ---------------------------------------------------------------------------

void suite_robust(Suite& s, bool quick) {
  const std::uint32_t seeds = quick ? 10 : 50;
  const std::uint64_t budget = 200000;
  struct Cell {
    std::uint32_t a, q;
  };
  for (Cell cell : {Cell{3, 4}, Cell{4, 8}, Cell{5, 16}}) {
    double pow_a1 = std::ldexp(1.0, static_cast<int>(cell.a) + 1);
    std::uint32_t ok_log = 0, ok_ratio = 0, ok_scale = 0, solved = 0;
    for (std::uint32_t i = 0; i < seeds; ++i) {
      std::uint64_t seed =
          SplitMix64::stream(kSuiteSeed + 77 + cell.a * 17 + cell.q, i).next_u64();
      {
        RobustRerooter rer(std::make_unique<UniformClueRerooter>(1));
        SearchRun run = cluetree_crlts_run(cell.a, cell.q, seed, rer, budget);
        if (run.solution) {
          ++solved;
          std::uint64_t T = run.solution->step;
          double w_lt = run.cum_weight_lt(T);
          double wt_lt = run.cum_input_weight_lt(T);
          if (w_lt <= ulp_up(1.0 + std::log(wt_lt))) ++ok_log;
        }
      }
      {
        RobustRerooter rer(std::make_unique<ExponentialClueRerooter>());
        SearchRun run = cluetree_crlts_run(cell.a, cell.q, seed, rer, budget);
        if (run.solution) {
          std::uint64_t T = run.solution->step;
          bool ratio_ok = true;
          for (std::uint64_t t = 1; t <= T; ++t) {
            double wt = run.input_weight_at(t);
            if (wt > 0.0 && run.cum_input_weight_leq(t) / wt >= 2.0) {
              ratio_ok = false;
            }
          }
          if (ratio_ok) ++ok_ratio;
          double c = 2.0 * std::log(2.0) + 1.0;
          std::uint64_t q_T = run.clue_count[T - 1];
          if (static_cast<double>(T) <=
              ulp_up(c * static_cast<double>(q_T) * pow_a1)) {
            ++ok_scale;
          }
        }
      }
    }
    std::string cell_name =
        "a=" + std::to_string(cell.a) + " q=" + std::to_string(cell.q);
    s.add(cell_name + ": robust weights give W_{<T} <= 1 + ln Wtilde_{<T}",
          solved == seeds && ok_log == seeds,
          std::to_string(ok_log) + "/" + std::to_string(seeds));
    s.add(cell_name + ": exponential weights keep Wtilde_{<=t}/wtilde_t < 2",
          ok_ratio == seeds);
    s.add(cell_name + ": exponential weights give T <= (2 ln 2 + 1) q_T 2^{a+1}",
          ok_scale == seeds);
  }
}

// ---------------------------------------------------------------------------

void suite_dchain(Suite& s, bool quick) {
  bool t_ok = true, w_ok = true, all_solved = true;
  for (std::uint32_t d = 2; d <= 12; ++d) {
    domains::DChainEnv env(d);
    CrltsCost model;
    RewardRerooter rer;
    double cap = (d + 1) * std::ldexp(1.0, static_cast<int>(d));
    SearchRun run =
        run_search(env, model, rer, static_cast<std::uint64_t>(cap) + 16, d);
    if (!run.solution) {
      all_solved = false;
      continue;
    }
    std::uint64_t T = run.solution->step;
    if (static_cast<double>(T) > cap) t_ok = false;
    if (run.cum_weight_lt(T) > ulp_up((d + 1) / 2.0)) w_ok = false;
  }
  s.add("D-chain, D in 2..12: solved with T <= (D+1) 2^D",
        all_solved && t_ok);
  s.add("D-chain, D in 2..12: W_{<T} <= (D+1)/2", w_ok);

  // One misleading reward near the root.
  domains::MisleadingRewardEnv mis(0.5, 6);
  PuctResult puct = puct_search(mis, 2.0, quick ? 20000 : 60000, 0);
  bool puct_slow = !puct.first_goal_iteration || *puct.first_goal_iteration >= 256;
  s.add("PUCT needs >= 256 root traversals on misleading reward", puct_slow,
        puct.first_goal_iteration
            ? "goal at iteration " + std::to_string(*puct.first_goal_iteration)
            : "no goal within budget");

  CrltsCost model;
  RewardRerooter rer;
  SearchRun run = run_search(mis, model, rer, 400, 0);
  s.add("rerooted search solves misleading reward within (1+alpha) 2^{d+1} = 384",
        run.solution && run.solution->step <= 384,
        run.solution ? "T = " + std::to_string(run.solution->step) : "unsolved");

  // D-chain head-to-head at D = 8.
  domains::DChainEnv dc(8);
  CrltsCost model2;
  RewardRerooter rer2;
  SearchRun rl = run_search(dc, model2, rer2, 9 * 256 + 16, 0);
  PuctResult pc = puct_search(dc, 2.0, quick ? 20000 : 50000, 0);
  bool ratio_ok = rl.solution && (!pc.first_goal_iteration ||
                                  *pc.first_goal_iteration >=
                                      10 * rl.solution->step);
  s.add("PUCT trails rerooted search by >= 10x on the D-chain", ratio_ok,
        rl.solution ? "T_rootlts = " + std::to_string(rl.solution->step)
                    : "unsolved");
}

// ---------------------------------------------------------------------------

void suite_sccf(Suite& s, bool quick) {
  const std::size_t trees = quick ? 24 : 200;
  const double theta_max = quick ? 500.0 : 2000.0;
  std::vector<double> thetas{1.5, 3.0, 7.0, 20.0, 77.0, 250.0, theta_max};
  std::size_t ok = 0;
  for (std::size_t i = 0; i < trees; ++i) {
    domains::RandomProperTreeEnv env(kSuiteSeed + 1000 + i,
                                     2 + static_cast<std::uint32_t>(i % 3));
    auto rep = verify::check_sop_self_counting(env, theta_max, thetas);
    if (rep.upper_ok && rep.lower_ok) ++ok;
  }
  s.add("two-sided slenderness count bounds on random proper trees",
        ok == trees, std::to_string(ok) + "/" + std::to_string(trees));

  // Composition of inverse-probability costs stays self-counting.
  const std::size_t comps = quick ? 10 : 50;
  std::size_t comp_ok = 0;
  for (std::size_t j = 0; j < comps; ++j) {
    SplitMix64 rng = SplitMix64::stream(kSuiteSeed + 2000, j);
    std::size_t nodes = 1000 + rng.next_below(9000);
    NodeArena arena = verify::random_tree(kSuiteSeed + 3000 + j, nodes, 3,
                                          (j % 2) == 0);
    std::size_t n = arena.size();
    std::size_t k = 2 + rng.next_below(3);
    std::vector<std::vector<double>> inv_p(k, std::vector<double>(n));
    for (std::size_t b = 0; b < k; ++b) {
      double sum = 0.0;
      std::vector<double> raw(n);
      for (auto& r : raw) {
        r = 0.01 + rng.next_double();
        sum += r;
      }
      for (std::size_t i = 0; i < n; ++i) inv_p[b][i] = sum / raw[i];
    }
    std::vector<double> wts(k);
    double wsum = 0.0;
    for (auto& wv : wts) {
      wv = 0.05 + rng.next_double();
      wsum += wv;
    }
    double scale = (0.3 + 0.7 * rng.next_double()) / wsum;
    for (auto& wv : wts) wv *= scale;

    std::vector<double> costs(n);
    for (std::size_t i = 0; i < n; ++i) {
      double best = kInf;
      for (std::size_t b = 0; b < k; ++b) {
        best = std::min(best, inv_p[b][i] / wts[b]);
      }
      costs[i] = best;
    }
    std::vector<double> comp_thetas{1.0,    5.0,     25.0,     100.0,
                                    1000.0, 10000.0, 100000.0, 1e6};
    if (verify::check_self_counting(costs, comp_thetas).upper_ok) ++comp_ok;
  }
  s.add("weighted minimum of inverse-distribution costs is self-counting",
        comp_ok == comps, std::to_string(comp_ok) + "/" + std::to_string(comps));
}

// ---------------------------------------------------------------------------

void suite_telescoping(Suite& s, bool quick) {
  const std::size_t trees = quick ? 8 : 40;
  double max_err = 0.0;
  for (std::size_t i = 0; i < trees; ++i) {
    NodeArena arena =
        verify::random_tree(kSuiteSeed + 4000 + i, 800, 3, (i % 2) == 0);
    SplitMix64 rng = SplitMix64::stream(kSuiteSeed + 5000, i);
    for (int trial = 0; trial < 50; ++trial) {
      NodeId n{static_cast<std::uint32_t>(rng.next_below(arena.size()))};
      std::vector<NodeId> path;
      for (NodeId cur = n; cur.valid(); cur = arena[cur].parent) {
        path.push_back(cur);
      }
      std::reverse(path.begin(), path.end());
      std::size_t ia = rng.next_below(path.size());
      std::size_t ib = ia + rng.next_below(path.size() - ia);
      NodeId na = path[ia], nb = path[ib];
      double pa = std::exp(arena[na].log_path_prob);
      double pb = std::exp(arena[nb].log_path_prob);
      double lhs = (verify::rooted_between(arena, na, n) - 1.0) / pa;
      double rhs = (verify::rooted_between(arena, na, nb) - 1.0) / pa +
                   (verify::rooted_between(arena, nb, n) - 1.0) / pb;
      max_err = std::max(max_err, rel_diff(lhs, rhs));
    }
  }
  s.add("rooted-cost telescoping identity within 1e-9", max_err <= 1e-9,
        "max rel err " + num(max_err));
}

// ---------------------------------------------------------------------------

void suite_bounds(Suite& s, bool quick) {
  // Catching-up scenario with rooted segment costs (A, A, B, A, C, A);
  // probabilities 1/(X-1) make lambda/pi across one edge equal X.
  {
    const double A = 10, B = 40, C = 20;
    domains::ChainEnv chain(
        {1 / (A - 1), 1 / (A - 1), 1 / (B - 1), 1 / (A - 1), 1 / (C - 1),
         1 / (A - 1)},
        6);
    CrltsCost model;
    ConstantRerooter one(1.0);
    SearchRun run = run_search(chain, model, one, 16, 0);
    verify::SubtaskDecomposition d{{1, 2, 3, 4, 5, 6, 7}};
    auto thm3 = verify::bound_thm3(run, d);
    auto cor4 = verify::bound_cor4(run, d);
    bool ok = run.solution && near(thm3.bound_value, 3 * B + 2 * C + A) &&
              near(cor4.bound_value, 6 * B) && thm3.holds && cor4.holds;
    s.add("segment scenario gives thm3 = 3B+2C+A and cor4 = 6B", ok,
          num(thm3.bound_value) + " vs 170, " + num(cor4.bound_value) +
              " vs 240");
  }

  // DP minimizer equals exhaustive enumeration on random weighted chains.
  {
    const std::size_t chains = quick ? 6 : 20;
    std::size_t ok = 0;
    for (std::size_t i = 0; i < chains; ++i) {
      SplitMix64 rng = SplitMix64::stream(kSuiteSeed + 6000, i);
      std::size_t len = 4 + rng.next_below(9);  // m <= 12 candidates
      const double prob_menu[] = {0.5, 1.0 / 3.0, 0.2, 1.0};
      const double weight_menu[] = {0.0, 0.3, 1.0};
      std::vector<double> probs(len);
      for (auto& p : probs) p = prob_menu[rng.next_below(4)];
      std::vector<double> wts(len + 1);
      for (auto& wv : wts) wv = weight_menu[rng.next_below(3)];
      wts[0] = 1.0;

      domains::ChainEnv chain(probs);
      CrltsCost model;
      TableRerooter rer(wts);
      SearchRun run = run_search(chain, model, rer, len + 2, 0);

      auto [dp, dp_rep] = verify::min_decomposition(run);
      // exhaustive over subsets of weighted interior steps
      std::vector<std::uint64_t> interior;
      for (std::uint64_t t = 2; t < run.steps(); ++t) {
        if (run.weight_at(t) > 0.0) interior.push_back(t);
      }
      double best_max = kInf;
      std::size_t best_count = static_cast<std::size_t>(-1);
      for (std::uint64_t mask = 0; mask < (1ull << interior.size()); ++mask) {
        verify::SubtaskDecomposition d{{1}};
        for (std::size_t b = 0; b < interior.size(); ++b) {
          if (mask & (1ull << b)) d.steps.push_back(interior[b]);
        }
        d.steps.push_back(run.steps());
        double worst = 0.0;
        for (std::size_t j = 0; j + 1 < d.steps.size(); ++j) {
          NodeId x = run.visit_order[d.steps[j] - 1];
          NodeId y = run.visit_order[d.steps[j + 1] - 1];
          worst = std::max(worst, verify::rooted_between(run.arena, x, y) /
                                      run.weight_at(d.steps[j]));
        }
        std::size_t segs = d.steps.size() - 1;
        if (worst < best_max * (1 - 1e-12) ||
            (near(worst, best_max, 1e-12) && segs < best_count)) {
          best_max = worst;
          best_count = segs;
        }
      }
      double dp_max = dp_rep.bound_value / run.cum_weight_lt(run.steps());
      if (near(dp_max, best_max, 1e-9) && dp.steps.size() - 1 == best_count) {
        ++ok;
      }
    }
    s.add("DP decomposition equals exhaustive minimum on random chains",
          ok == chains, std::to_string(ok) + "/" + std::to_string(chains));
  }

  // Incremental ancestor-set costs equal the direct-summation oracle.
  {
    const std::size_t trees = quick ? 2 : 4;
    double worst = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < trees; ++i) {
      NodeArena arena =
          verify::random_tree(kSuiteSeed + 7000 + i, 500, 3, (i % 2) == 0);
      const double menu[] = {0.0, 0.3, 1.0};
      std::vector<double> wts =
          verify::random_weights(kSuiteSeed + 7100 + i, arena.size(), menu);
      for (std::size_t id = 0; id < arena.size(); ++id) {
        arena[NodeId{static_cast<std::uint32_t>(id)}].visit_step = id + 1;
        arena[NodeId{static_cast<std::uint32_t>(id)}].reroot_weight = wts[id];
      }
      CrltsCost model;
      double root_cost = model.root_log_cost(arena);
      ok = ok && root_cost == 0.0;
      for (std::size_t id = 1; id < arena.size(); ++id) {
        NodeId child{static_cast<std::uint32_t>(id)};
        double inc = model.child_log_cost(arena, arena[child].parent, child);
        double naive = naive_crlts_log_cost(arena, wts, child);
        double err = rel_diff(inc, naive);
        worst = std::max(worst, err);
        if (err > 1e-9) ok = false;
      }
    }
    s.add("incremental c^r equals the naive oracle within 1e-9", ok,
          "max rel err " + num(worst));
  }

  // Instrumented clue-tree runs: every sampled decomposition bound holds,
  // and visit/path cost maxima agree.
  {
    const std::uint32_t runs = quick ? 2 : 5;
    bool bounds_ok = true, ttp_ok = true, cor6_ok = true;
    double ttp_err = 0.0;
    for (std::uint32_t i = 0; i < runs; ++i) {
      std::uint64_t seed = SplitMix64::stream(kSuiteSeed + 8000, i).next_u64();
      PerCountRerooter rer;
      SearchRun run = cluetree_crlts_run(4, 8, seed, rer, 50000);
      if (!run.solution) {
        bounds_ok = false;
        continue;
      }
      for (const auto& d : verify::sample_decompositions(run)) {
        bounds_ok = bounds_ok && verify::bound_thm3(run, d).holds &&
                    verify::bound_cor4(run, d).holds;
      }
      bounds_ok =
          bounds_ok && verify::bound_eq14(run, run.solution->step).holds;
      auto ttp = verify::check_tree_to_path(run, 100, seed, 1e-9);
      ttp_ok = ttp_ok && ttp.ok;
      ttp_err = std::max(ttp_err, ttp.max_rel_err);

      RobustRerooter rrer(std::make_unique<UniformClueRerooter>(1));
      SearchRun rrun = cluetree_crlts_run(4, 8, seed, rrer, 50000);
      if (rrun.solution) {
        for (const auto& d : verify::sample_decompositions(rrun)) {
          cor6_ok = cor6_ok && verify::bound_cor6(rrun, d).holds;
        }
      } else {
        cor6_ok = false;
      }
    }
    s.add("thm3/cor4/eq14 hold on every sampled decomposition", bounds_ok);
    s.add("cor6 holds on robust-weight runs", cor6_ok);
    s.add("tree-to-path cost maxima agree within 1e-9", ttp_ok,
          "max rel err " + num(ttp_err));
  }

  // Monotone compound model: t <= c(n_t) at every step (self-counting
  // composition at work), and the max-of-mins model satisfies the same.
  {
    std::vector<std::unique_ptr<CostModel>> bases;
    bases.push_back(std::make_unique<SopCost>());
    bases.push_back(std::make_unique<OnePlusDopCost>());
    CompoundCost compound(std::move(bases), {0.5, 0.5});
    domains::RandomProperTreeEnv env(kSuiteSeed + 42, 3);
    NullRerooter none;
    SearchRun run = run_search(env, compound, none, 2000, 0);
    bool ok = true;
    for (std::uint64_t t = 1; t <= run.steps(); ++t) {
      double log_cost = run.arena[run.visit_order[t - 1]].log_cost;
      if (std::log(static_cast<double>(t)) > log_cost + 1e-9) ok = false;
    }
    s.add("compound monotone model keeps t <= c(n_t)", ok);

    domains::ClueTreeEnv clue({3, 4, kSuiteSeed + 43});
    CmaxCost cmax([](const Signal& sig) {
      return sig.is_clue() ? 0.25 : 0.0;  // 1/q with q = 4, sums to <= 1
    });
    SearchRun crun = run_search(clue, cmax, none, 600, 0);
    bool cok = true;
    for (std::uint64_t t = 1; t <= crun.steps(); ++t) {
      double log_cost = crun.arena[crun.visit_order[t - 1]].log_cost;
      if (std::log(static_cast<double>(t)) > log_cost + 1e-9) cok = false;
    }
    s.add("monotone-envelope rerooting model keeps t <= cmax(n_t)", cok);
  }

  // Lemma 1 on plain slenderness-cost runs.
  {
    bool ok = true;
    for (std::uint32_t i = 0; i < (quick ? 2u : 5u); ++i) {
      domains::ClueTreeEnv env({3, 4, kSuiteSeed + 9000 + i});
      SearchRun run = lts_search(env, LtsVariant::kSop, 2000, i);
      ok = ok && verify::check_lemma1(run);
    }
    domains::RandomProperTreeEnv env(kSuiteSeed + 9100, 3);
    ok = ok && verify::check_lemma1(lts_search(env, LtsVariant::kSop, 2000, 0));
    s.add("t <= lambda/pi(n_t) on every slenderness-cost run", ok);
  }
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& selector, bool quick) {
  std::vector<CheckResult> out;
  auto want = [&](const char* name) {
    return selector == "all" || selector == name;
  };
  if (want("appendix-g")) {
    Suite s{"appendix-g", out};
    suite_appendix_g(s);
  }
  if (want("sokoban-sim")) {
    Suite s{"sokoban-sim", out};
    suite_sokoban_sim(s);
  }
  if (want("cluetree")) {
    Suite s{"cluetree", out};
    suite_cluetree(s, quick);
  }
  if (want("robust")) {
    Suite s{"robust", out};
    suite_robust(s, quick);
  }
  if (want("dchain")) {
    Suite s{"dchain", out};
    suite_dchain(s, quick);
  }
  if (want("sccf")) {
    Suite s{"sccf", out};
    suite_sccf(s, quick);
  }
  if (want("telescoping")) {
    Suite s{"telescoping", out};
    suite_telescoping(s, quick);
  }
  if (want("bounds")) {
    Suite s{"bounds", out};
    suite_bounds(s, quick);
  }
  if (out.empty()) {
    throw ConfigError("unknown verify suite: " + selector);
  }
  return out;
}

}  // namespace rootlts::bench
