#include "rootlts/verify.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

#include "rootlts/domains/clue_tree.hpp"
#include "rootlts/domains/sokoban.hpp"
#include "rootlts/util.hpp"

namespace rootlts::verify {

const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::kThm3:
      return "thm3";
    case BoundKind::kCor4:
      return "cor4";
    case BoundKind::kEq14:
      return "eq14";
    case BoundKind::kCor6:
      return "cor6";
    case BoundKind::kEq12:
      return "eq12";
  }
  return "?";
}

double rooted_between(const NodeArena& arena, NodeId anc, NodeId desc) {
  std::vector<double> probs;
  NodeId cur = desc;
  while (cur != anc) {
    if (!cur.valid()) {
      throw std::logic_error("rooted_between: not an ancestor");
    }
    probs.push_back(arena[cur].cond_prob);
    cur = arena[cur].parent;
  }
  std::reverse(probs.begin(), probs.end());
  return rooted_sop_value(probs);
}

bool is_valid_decomposition(const SearchRun& run,
                            const SubtaskDecomposition& d) {
  if (d.steps.size() < 2 || d.steps.front() != 1) return false;
  for (std::size_t i = 0; i + 1 < d.steps.size(); ++i) {
    if (d.steps[i] >= d.steps[i + 1]) return false;
  }
  if (d.steps.back() > run.steps()) return false;
  // nodes must form an ancestor chain
  for (std::size_t i = 0; i + 1 < d.steps.size(); ++i) {
    NodeId upper = run.visit_order[d.steps[i] - 1];
    NodeId cur = run.visit_order[d.steps[i + 1] - 1];
    while (cur.valid() && cur != upper) cur = run.arena[cur].parent;
    if (cur != upper) return false;
  }
  return true;
}

namespace {

void require_valid(const SearchRun& run, const SubtaskDecomposition& d) {
  if (!is_valid_decomposition(run, d)) {
    throw std::logic_error("bound check: invalid subtask decomposition");
  }
}

// Weighted rooted costs of consecutive segments, linear space.
std::vector<double> segment_costs(const SearchRun& run,
                                  const SubtaskDecomposition& d) {
  std::vector<double> seg(d.steps.size() - 1);
  for (std::size_t i = 0; i + 1 < d.steps.size(); ++i) {
    NodeId a = run.visit_order[d.steps[i] - 1];
    NodeId b = run.visit_order[d.steps[i + 1] - 1];
    seg[i] = rooted_between(run.arena, a, b) / run.weight_at(d.steps[i]);
  }
  return seg;
}

}  // namespace

BoundReport bound_thm3(const SearchRun& run, const SubtaskDecomposition& d) {
  require_valid(run, d);
  std::vector<double> seg = segment_costs(run, d);
  std::vector<double> suffix_max(seg.size());
  double m = kNegInf;
  for (std::size_t i = seg.size(); i-- > 0;) {
    m = std::max(m, seg[i]);
    suffix_max[i] = m;
  }
  KahanSum bound;
  for (std::size_t j = 0; j + 1 < d.steps.size(); ++j) {
    double dw = run.cum_weight_lt(d.steps[j + 1]) - run.cum_weight_lt(d.steps[j]);
    bound.add(dw * suffix_max[j]);
  }
  BoundReport r;
  r.t_actual = d.steps.back();
  r.bound_value = bound.value();
  r.kind = BoundKind::kThm3;
  r.decomposition = d;
  r.holds = static_cast<double>(r.t_actual) <= ulp_up(r.bound_value);
  return r;
}

BoundReport bound_cor4(const SearchRun& run, const SubtaskDecomposition& d) {
  require_valid(run, d);
  std::vector<double> seg = segment_costs(run, d);
  double max_seg = *std::max_element(seg.begin(), seg.end());
  BoundReport r;
  r.t_actual = d.steps.back();
  r.bound_value = run.cum_weight_lt(d.steps.back()) * max_seg;
  r.kind = BoundKind::kCor4;
  r.decomposition = d;
  r.holds = static_cast<double>(r.t_actual) <= ulp_up(r.bound_value);
  return r;
}

BoundReport bound_eq14(const SearchRun& run, std::uint64_t target_step) {
  SubtaskDecomposition d{{1, target_step}};
  BoundReport r = bound_cor4(run, d);
  r.kind = BoundKind::kEq14;
  return r;
}

BoundReport bound_cor6(const SearchRun& run, const SubtaskDecomposition& d) {
  require_valid(run, d);
  if (run.input_weights.empty()) {
    throw std::logic_error("bound_cor6: missing input-weight trace");
  }
  std::uint64_t T = d.steps.back();
  double factor =
      1.0 + std::log(run.cum_input_weight_lt(T) / run.input_weight_at(1));
  double worst = kNegInf;
  for (std::size_t i = 0; i + 1 < d.steps.size(); ++i) {
    NodeId a = run.visit_order[d.steps[i] - 1];
    NodeId b = run.visit_order[d.steps[i + 1] - 1];
    double ratio = run.cum_input_weight_leq(d.steps[i]) /
                   run.input_weight_at(d.steps[i]);
    worst = std::max(worst, ratio * rooted_between(run.arena, a, b));
  }
  BoundReport r;
  r.t_actual = T;
  r.bound_value = factor * worst;
  r.kind = BoundKind::kCor6;
  r.decomposition = d;
  r.holds = static_cast<double>(r.t_actual) <= ulp_up(r.bound_value);
  return r;
}

namespace {

// Positive-weight visited nodes on the root-to-target path, plus the target.
std::vector<NodeId> decomposition_candidates(const SearchRun& run,
                                             NodeId target) {
  std::vector<NodeId> path;
  for (NodeId cur = target; cur.valid(); cur = run.arena[cur].parent) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  std::vector<NodeId> cand;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const NodeRecord& rec = run.arena[path[i]];
    if (i == 0 || rec.reroot_weight > 0.0) cand.push_back(path[i]);
  }
  cand.push_back(target);
  return cand;
}

}  // namespace

std::pair<SubtaskDecomposition, BoundReport> min_decomposition(
    const SearchRun& run) {
  NodeId target = run.solution ? run.solution->node : run.visit_order.back();
  if (run.arena[target].visit_step == 1) {
    // Degenerate target: no nontrivial decomposition exists; c^r(n_1) = 1.
    SubtaskDecomposition d{{1}};
    return {d, BoundReport{1, 1.0, BoundKind::kCor4, d, true}};
  }
  std::vector<NodeId> cand = decomposition_candidates(run, target);
  std::size_t n = cand.size();

  auto seg = [&](std::size_t j, std::size_t i) {
    return rooted_between(run.arena, cand[j], cand[i]) /
           run.arena[cand[j]].reroot_weight;
  };

  // Pass 1: minimal achievable max segment cost.
  std::vector<double> f(n, kInf);
  f[0] = kNegInf;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      f[i] = std::min(f[i], std::max(f[j], seg(j, i)));
    }
  }
  double best_max = f[n - 1];

  // Pass 2: fewest segments using only edges within the minimum.
  double cutoff = best_max * (1.0 + 1e-12);
  std::vector<std::size_t> count(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> prev(n, 0);
  count[0] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (count[j] == static_cast<std::size_t>(-1)) continue;
      if (seg(j, i) > cutoff) continue;
      if (count[j] + 1 < count[i]) {
        count[i] = count[j] + 1;
        prev[i] = j;
      }
    }
  }

  SubtaskDecomposition d;
  for (std::size_t i = n - 1;; i = prev[i]) {
    d.steps.push_back(run.arena[cand[i]].visit_step);
    if (i == 0) break;
  }
  std::reverse(d.steps.begin(), d.steps.end());
  return {d, bound_cor4(run, d)};
}

std::vector<SubtaskDecomposition> sample_decompositions(const SearchRun& run) {
  NodeId target = run.solution ? run.solution->node : run.visit_order.back();
  std::uint64_t T = run.arena[target].visit_step;
  if (T == 1) return {};
  std::vector<NodeId> cand = decomposition_candidates(run, target);

  std::set<std::vector<std::uint64_t>> seen;
  std::vector<SubtaskDecomposition> out;
  auto add = [&](SubtaskDecomposition d) {
    if (seen.insert(d.steps).second) out.push_back(std::move(d));
  };

  add(SubtaskDecomposition{{1, T}});

  SubtaskDecomposition all;
  for (NodeId nid : cand) all.steps.push_back(run.arena[nid].visit_step);
  add(all);

  for (std::size_t skip = 1; skip + 1 < cand.size(); ++skip) {
    SubtaskDecomposition d;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (i != skip) d.steps.push_back(run.arena[cand[i]].visit_step);
    }
    add(d);
  }

  add(min_decomposition(run).first);
  return out;
}

bool check_lemma1(const SearchRun& run) {
  for (std::uint64_t t = 1; t <= run.steps(); ++t) {
    double log_cost = run.arena[run.visit_order[t - 1]].log_cost;
    if (std::log(static_cast<double>(t)) > log_cost + 1e-9) return false;
  }
  return true;
}

TreeToPathReport check_tree_to_path(const SearchRun& run, std::size_t pairs,
                                    std::uint64_t seed, double tol) {
  TreeToPathReport rep;
  if (run.steps() < 2) return rep;
  SplitMix64 rng = SplitMix64::stream(seed, 7);
  for (std::size_t s = 0; s < pairs; ++s) {
    std::uint64_t t = 2 + rng.next_below(run.steps() - 1);
    NodeId nt = run.visit_order[t - 1];
    std::vector<NodeId> path;
    for (NodeId cur = nt; cur.valid(); cur = run.arena[cur].parent) {
      path.push_back(cur);
    }
    std::reverse(path.begin(), path.end());
    if (path.size() < 2) continue;
    std::size_t anc_idx = rng.next_below(path.size() - 1);
    std::uint64_t j = run.arena[path[anc_idx]].visit_step;

    double visit_max = kNegInf;
    for (std::uint64_t k = j + 1; k <= t; ++k) {
      visit_max = std::max(visit_max, run.arena[run.visit_order[k - 1]].log_cost);
    }
    double path_max = kNegInf;
    for (std::size_t i = anc_idx + 1; i < path.size(); ++i) {
      path_max = std::max(path_max, run.arena[path[i]].log_cost);
    }
    ++rep.pairs_checked;
    double err = rel_diff(visit_max, path_max);
    rep.max_rel_err = std::max(rep.max_rel_err, err);
    if (err > tol) rep.ok = false;
  }
  return rep;
}

SelfCountingReport check_self_counting(std::span<const double> costs,
                                       std::span<const double> thetas) {
  SelfCountingReport rep;
  std::vector<double> sorted(costs.begin(), costs.end());
  std::sort(sorted.begin(), sorted.end());
  for (double theta : thetas) {
    auto count = static_cast<double>(
        std::upper_bound(sorted.begin(), sorted.end(), theta) - sorted.begin());
    if (count > theta) {
      rep.upper_ok = false;
      rep.worst_theta = theta;
      rep.detail = "count " + std::to_string(count) + " > theta";
    }
  }
  return rep;
}

namespace {

struct EnumItem {
  double cost;
  std::uint64_t order;
  double inv_pp;
  StateId state;
  friend bool operator>(const EnumItem& a, const EnumItem& b) {
    return std::tie(a.cost, a.order) > std::tie(b.cost, b.order);
  }
};

}  // namespace

SelfCountingReport check_sop_self_counting(const Environment& env,
                                           double theta_max,
                                           std::span<const double> thetas) {
  SelfCountingReport rep;
  if (!env.proper_policy()) {
    rep.lower_ok = rep.upper_ok = false;
    rep.detail = "policy not proper";
    return rep;
  }

  // Independent linear-space enumeration by cost.
  std::priority_queue<EnumItem, std::vector<EnumItem>, std::greater<>> heap;
  heap.push({1.0, 0, 1.0, env.root()});
  std::uint64_t counter = 1;

  std::vector<double> costs;
  std::vector<std::uint32_t> arity;
  std::vector<ChildEdge> edges;
  std::size_t cap = static_cast<std::size_t>(theta_max) * 4 + 1024;
  while (!heap.empty()) {
    EnumItem it = heap.top();
    if (it.cost > theta_max) break;
    heap.pop();
    edges.clear();
    env.expand(it.state, edges);
    costs.push_back(it.cost);
    arity.push_back(static_cast<std::uint32_t>(edges.size()));
    if (costs.size() > cap) {
      rep.upper_ok = false;
      rep.detail = "enumeration exceeded cap: cost function not self-counting";
      return rep;
    }
    for (const ChildEdge& e : edges) {
      double inv = it.inv_pp / e.cond_prob;
      heap.push({it.cost + inv, counter++, inv, e.state});
    }
  }

  std::vector<std::size_t> idx(costs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });

  for (double theta : thetas) {
    if (theta > theta_max) continue;
    std::size_t count = 0;
    double arity_sum = 0.0;
    for (std::size_t i : idx) {
      if (costs[i] > theta) break;
      ++count;
      arity_sum += arity[i];
    }
    // Small relative slack absorbs float drift in the enumerated costs.
    if (static_cast<double>(count) > theta * (1.0 + 1e-9)) {
      rep.upper_ok = false;
      rep.worst_theta = theta;
    }
    if (count > 0) {
      double b = arity_sum / static_cast<double>(count);
      if (!(static_cast<double>(count) > (theta - 1.0) / b - 1e-9)) {
        rep.lower_ok = false;
        rep.worst_theta = theta;
      }
    } else if (theta > 1.0) {
      rep.lower_ok = false;
      rep.worst_theta = theta;
    }
  }
  return rep;
}

LowerBoundReport check_lower_bound_sanity(std::uint32_t a, std::uint32_t q,
                                          std::uint32_t trials,
                                          std::uint64_t seed) {
  LowerBoundReport rep;
  double pow2a = std::ldexp(1.0, static_cast<int>(a));
  rep.lower = (q + 1) * pow2a / 2.0;
  rep.upper = 4.0 * (q + 1) * pow2a;
  double per_instance = q * (2.0 * pow2a - 1.0);
  std::uint64_t budget = static_cast<std::uint64_t>(per_instance) + 16;

  KahanSum total;
  for (std::uint32_t i = 0; i < trials; ++i) {
    domains::ClueTreeEnv env({a, q, SplitMix64::stream(seed, i).next_u64()});
    CrltsCost model;
    UniformClueRerooter rer(q);
    SearchRun run = run_search(env, model, rer, budget, seed);
    if (!run.solution) {
      rep.per_instance_ok = false;
      continue;
    }
    auto T = static_cast<double>(run.solution->step);
    if (T > ulp_up(per_instance)) rep.per_instance_ok = false;
    total.add(T);
  }
  rep.mean_steps = total.value() / trials;
  rep.mean_lower_ok = rep.mean_steps >= rep.lower;
  rep.mean_upper_ok = rep.mean_steps <= rep.upper;
  return rep;
}

NodeArena random_tree(std::uint64_t seed, std::size_t max_nodes,
                      std::uint32_t max_arity, bool proper) {
  SplitMix64 rng = SplitMix64::stream(seed, 3);
  NodeArena arena;
  NodeRecord root;
  arena.add(root);
  std::size_t next_expand = 0;
  while (next_expand < arena.size() && arena.size() < max_nodes) {
    NodeId pid{static_cast<std::uint32_t>(next_expand++)};
    auto k = static_cast<std::uint32_t>(1 + rng.next_below(max_arity));
    std::vector<double> raw(k);
    double sum = 0.0;
    for (double& r : raw) {
      r = 0.05 + rng.next_double();
      sum += r;
    }
    double scale = proper ? 1.0 : 0.5 + 0.5 * rng.next_double();
    std::uint32_t added = 0;
    for (std::uint32_t i = 0; i < k && arena.size() < max_nodes; ++i) {
      double p = scale * raw[i] / sum;
      const NodeRecord& parent = arena[pid];
      NodeRecord child;
      child.parent = pid;
      child.depth = parent.depth + 1;
      child.cond_prob = p;
      child.log_cond_prob = std::log(p);
      child.log_path_prob = parent.log_path_prob + child.log_cond_prob;
      child.slenderness = slenderness_update(parent.slenderness, p);
      arena.add(child);
      ++added;
    }
    arena[pid].num_children = added;
  }
  return arena;
}

std::vector<double> random_weights(std::uint64_t seed, std::size_t n,
                                   std::span<const double> menu) {
  SplitMix64 rng = SplitMix64::stream(seed, 4);
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = menu[rng.next_below(menu.size())];
  }
  if (!w.empty()) w[0] = 1.0;
  return w;
}

// ---------------------------------------------------------------------------

const std::vector<std::vector<int>>& sokoban_walkthrough_branch_counts() {
  static const std::vector<std::vector<int>> counts = {
      {3, 3, 2, 3, 2, 1, 1, 1, 2},
      {2, 2, 2, 2},
      {4, 2, 3, 2, 3},
      {2, 3, 1, 3, 2, 3, 2},
  };
  return counts;
}

SokobanWalkthrough sokoban_walkthrough_values() {
  const auto& counts = sokoban_walkthrough_branch_counts();
  SokobanWalkthrough w;

  std::vector<double> all_inv;
  double lambda = 0.0;
  double inv_pp = 1.0;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    std::vector<double> inv(counts[s].begin(), counts[s].end());
    all_inv.insert(all_inv.end(), inv.begin(), inv.end());
    double rooted = rooted_sop_value_inv(inv);
    if (s > 0) w.rooted_seg[s - 1] = rooted;
    // telescoping: lambda/pi(next) = lambda/pi(cur) + (rooted - 1)/pi(cur)
    lambda = s == 0 ? rooted : lambda + inv_pp * (rooted - 1.0);
    for (int b : counts[s]) inv_pp *= b;
    w.seg_lambda[s] = lambda;
  }
  w.direct_total = rooted_sop_value_inv(all_inv);

  for (int z = 1; z <= 3; ++z) {
    w.clue_estimate[z - 1] = domains::clue_count_estimate(89, z);
  }

  // Decomposition points along the concatenated action list; weight 1 at
  // the root and 1/M_z at the clue of type z.
  std::vector<std::size_t> pos{0};
  for (const auto& seg : counts) pos.push_back(pos.back() + seg.size());
  auto rooted_range = [&](std::size_t from, std::size_t to) {
    return rooted_sop_value_inv(
        std::span<const double>(all_inv).subspan(from, to - from));
  };
  auto ladder = [&](const std::vector<int>& kept) {
    std::vector<std::size_t> points{0};
    std::vector<double> inv_weights{1.0};
    for (int z : kept) {
      points.push_back(pos[static_cast<std::size_t>(z)]);
      inv_weights.push_back(static_cast<double>(w.clue_estimate[z - 1]));
    }
    points.push_back(pos[4]);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
      double seg = rooted_range(points[i], points[i + 1]);
      worst = std::max(worst, seg * inv_weights[i]);
    }
    return 4.0 * worst;
  };
  w.ladder_all = ladder({1, 2, 3});
  w.ladder_skip1 = ladder({2, 3});
  w.ladder_skip12 = ladder({3});

  double best = kInf;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> kept;
    for (int z = 1; z <= 3; ++z) {
      if (mask & (1 << (z - 1))) kept.push_back(z);
    }
    double v = ladder(kept);
    if (v < best) {
      best = v;
      w.best_subset = kept;
    }
  }

  w.trace_bound =
      3.83 * std::max({733.0, 9.0 * 31.0, 2.0 * 229.0, 2.0 * 393.0});
  return w;
}

}  // namespace rootlts::verify
