#include "rootlts/cost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rootlts/util.hpp"

namespace rootlts {

double slenderness_update(double lambda_parent, double cond_prob) {
  if (!(cond_prob > 0.0) || cond_prob > 1.0) {
    throw std::invalid_argument("slenderness_update: cond_prob outside (0,1]");
  }
  if (!(lambda_parent >= 1.0)) {
    throw std::invalid_argument("slenderness_update: lambda_parent < 1");
  }
  return lambda_parent * cond_prob + 1.0;
}

double rooted_sop_value(std::span<const double> cond_probs) {
  KahanSum total(0.0);
  total.add(1.0);  // empty prefix: 1/pi(n_a | n_a)
  double inv_prod = 1.0;
  for (double p : cond_probs) {
    if (!(p > 0.0) || p > 1.0) {
      throw std::invalid_argument("rooted_sop_value: cond_prob outside (0,1]");
    }
    inv_prod /= p;
    total.add(inv_prod);
  }
  return total.value();
}

double rooted_sop_value_inv(std::span<const double> inv_cond_probs) {
  KahanSum total(0.0);
  total.add(1.0);
  double prod = 1.0;
  for (double inv : inv_cond_probs) {
    if (!(inv >= 1.0)) {
      throw std::invalid_argument("rooted_sop_value_inv: inverse < 1");
    }
    prod *= inv;
    total.add(prod);
  }
  return total.value();
}

double SopCost::child_log_cost(const NodeArena& arena, NodeId, NodeId child) {
  const NodeRecord& c = arena[child];
  return std::log(c.slenderness) - c.log_path_prob;
}

double DopCost::child_log_cost(const NodeArena& arena, NodeId, NodeId child) {
  const NodeRecord& c = arena[child];
  return std::log(static_cast<double>(c.depth)) - c.log_path_prob;
}

double OnePlusDopCost::child_log_cost(const NodeArena& arena, NodeId,
                                      NodeId child) {
  const NodeRecord& c = arena[child];
  double log_dop = std::log(static_cast<double>(c.depth)) - c.log_path_prob;
  if (log_dop > 50.0) return log_dop;  // 1 is negligible
  return std::log1p(std::exp(log_dop));
}

double BreadthCost::child_log_cost(const NodeArena& arena, NodeId,
                                   NodeId child) {
  return std::log(static_cast<double>(arena[child].depth) + 1.0);
}

// ---------------------------------------------------------------------------

double AncestorCostEntry::log_base_cost() const {
  return std::log(lambda_prime) - log_rel_prob;
}

AncestorUpdateResult ancestor_set_update(const AncestorSet& parent_set,
                                         const NodeRecord& parent,
                                         NodeId parent_id, double cond_prob,
                                         double parent_weight) {
  if (!parent.visited()) {
    throw std::logic_error("ancestor_set_update: parent not yet visited");
  }
  if (!(cond_prob > 0.0) || cond_prob > 1.0) {
    throw std::invalid_argument("ancestor_set_update: cond_prob outside (0,1]");
  }
  double log_p = std::log(cond_prob);

  AncestorSet candidates;
  candidates.reserve(parent_set.size() + 1);
  for (const AncestorCostEntry& e : parent_set) {
    candidates.push_back({e.ancestor, e.lambda_prime * cond_prob + 1.0,
                          e.log_rel_prob + log_p, e.log_weight});
  }
  if (parent_weight > 0.0) {
    // The parent joins with lambda'(child | parent) = 1.
    candidates.push_back({parent_id, 1.0, log_p, std::log(parent_weight)});
  }
  if (candidates.empty()) {
    throw std::logic_error("ancestor_set_update: no weighted ancestor (w_1 must be > 0)");
  }

  // argmin of c^r_a(child)/w_a; ties go to the deeper ancestor.
  std::size_t best = 0;
  double best_cost = candidates[0].log_weighted_cost();
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    double c = candidates[i].log_weighted_cost();
    if (c <= best_cost) {
      best = i;
      best_cost = c;
    }
  }

  // Keep b only if it can later beat the pivot: its weighted slope
  // 1/(w_b pi(n|n_b)) must be strictly smaller, i.e.
  // log w_b + log pi(n|n_b) > log w_a* + log pi(n|n_a*).
  AncestorUpdateResult res;
  res.log_cost = best_cost;
  double pivot = candidates[best].log_weight + candidates[best].log_rel_prob;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (i == best ||
        candidates[i].log_weight + candidates[i].log_rel_prob > pivot) {
      res.set.push_back(candidates[i]);
    }
  }
  return res;
}

double CrltsCost::root_log_cost(const NodeArena&) {
  sets_.assign(1, AncestorSet{});
  return 0.0;  // c^r(n_1) = 1
}

double CrltsCost::child_log_cost(const NodeArena& arena, NodeId parent,
                                 NodeId child) {
  const NodeRecord& p = arena[parent];
  const NodeRecord& c = arena[child];
  AncestorUpdateResult res = ancestor_set_update(
      sets_[parent.v], p, parent, c.cond_prob, p.reroot_weight);
  if (sets_.size() <= child.v) sets_.resize(child.v + 1);
  sets_[child.v] = std::move(res.set);
  return res.log_cost;
}

CompoundCost::CompoundCost(std::vector<std::unique_ptr<CostModel>> bases,
                           std::vector<double> weights)
    : bases_(std::move(bases)) {
  if (bases_.size() != weights.size() || bases_.empty()) {
    throw std::invalid_argument("CompoundCost: bases/weights mismatch");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("CompoundCost: weight <= 0");
    log_weights_.push_back(std::log(w));
  }
}

double CompoundCost::root_log_cost(const NodeArena& arena) {
  double best = kInf;
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    best = std::min(best, bases_[i]->root_log_cost(arena) - log_weights_[i]);
  }
  return best;
}

double CompoundCost::child_log_cost(const NodeArena& arena, NodeId parent,
                                    NodeId child) {
  double best = kInf;
  for (std::size_t i = 0; i < bases_.size(); ++i) {
    best = std::min(
        best, bases_[i]->child_log_cost(arena, parent, child) - log_weights_[i]);
  }
  return best;
}

// ---------------------------------------------------------------------------

double CmaxCost::ctilde(const std::vector<Entry>& entries) const {
  double best = kInf;
  for (const Entry& e : entries) {
    best = std::min(best, std::log(e.lambda) - e.log_rel_prob - e.log_weight);
  }
  return best;
}

double CmaxCost::root_log_cost(const NodeArena& arena) {
  entries_.assign(1, {});
  cmax_.assign(1, 0.0);
  double w = signal_weight_(arena[NodeId{0}].signal);
  if (w > 0.0) entries_[0].push_back({1.0, 0.0, std::log(w)});
  cmax_[0] = ctilde(entries_[0]);
  return cmax_[0];
}

double CmaxCost::child_log_cost(const NodeArena& arena, NodeId parent,
                                NodeId child) {
  const NodeRecord& c = arena[child];
  double log_p = c.log_cond_prob;
  std::vector<Entry> entries;
  entries.reserve(entries_[parent.v].size() + 1);
  for (const Entry& e : entries_[parent.v]) {
    entries.push_back(
        {e.lambda * c.cond_prob + 1.0, e.log_rel_prob + log_p, e.log_weight});
  }
  double own = signal_weight_(c.signal);
  if (own > 0.0) entries.push_back({1.0, 0.0, std::log(own)});

  double value = std::max(cmax_[parent.v], ctilde(entries));
  if (entries_.size() <= child.v) {
    entries_.resize(child.v + 1);
    cmax_.resize(child.v + 1);
  }
  entries_[child.v] = std::move(entries);
  cmax_[child.v] = value;
  return value;
}

// ---------------------------------------------------------------------------
// Direct-summation oracles.

namespace {

std::vector<NodeId> chain_to_root(const NodeArena& arena, NodeId node) {
  std::vector<NodeId> chain;
  for (NodeId cur = node; cur.valid(); cur = arena[cur].parent) {
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Rooted lambda/pi(node | chain[i]) by direct summation.
double rooted_from(const NodeArena& arena, const std::vector<NodeId>& chain,
                   std::size_t i) {
  std::vector<double> probs;
  probs.reserve(chain.size() - i - 1);
  for (std::size_t k = i + 1; k < chain.size(); ++k) {
    probs.push_back(arena[chain[k]].cond_prob);
  }
  return rooted_sop_value(probs);
}

}  // namespace

double naive_crlts_log_cost(const NodeArena& arena,
                            std::span<const double> weights, NodeId node) {
  std::vector<NodeId> chain = chain_to_root(arena, node);
  if (chain.size() == 1) return 0.0;  // c^r(n_1) = 1
  double best = kInf;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    double w = weights[chain[i].v];
    if (!(w > 0.0)) continue;
    double v = rooted_from(arena, chain, i);
    best = std::min(best, std::log(v - 1.0) - std::log(w));
  }
  return best;
}

double ctilde_log_cost(const NodeArena& arena, std::span<const double> weights,
                       NodeId node) {
  std::vector<NodeId> chain = chain_to_root(arena, node);
  double best = kInf;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    double w = weights[chain[i].v];
    if (!(w > 0.0)) continue;
    double v = rooted_from(arena, chain, i);
    best = std::min(best, std::log(v) - std::log(w));
  }
  return best;
}

double cmax_log_cost(const NodeArena& arena, std::span<const double> weights,
                     NodeId node) {
  std::vector<NodeId> chain = chain_to_root(arena, node);
  double best = kNegInf;
  for (NodeId n : chain) {
    best = std::max(best, ctilde_log_cost(arena, weights, n));
  }
  return best;
}

}  // namespace rootlts
