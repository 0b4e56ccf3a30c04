#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "rootlts/node.hpp"

namespace rootlts {

// lambda(child) = lambda(parent) * pi(child | parent) + 1.
// Result lies in [1, lambda_parent + 1].
double slenderness_update(double lambda_parent, double cond_prob);

// Rooted slenderness cost lambda/pi(n | n_a), computed by direct summation
// of inverse prefix products. cond_probs runs from just below n_a down to n;
// the empty list is the single term 1 (n = n_a).
double rooted_sop_value(std::span<const double> cond_probs);

// Same sum from exact inverse probabilities (e.g. integer branch counts);
// integer inputs keep every intermediate integer-exact below 2^53.
double rooted_sop_value_inv(std::span<const double> inv_cond_probs);

// ---------------------------------------------------------------------------
// Cost models. One instance serves one run: models may keep per-node
// attachments indexed by node id. All costs are returned in natural-log
// space; best-first search is invariant to this monotone transform.

class CostModel {
 public:
  virtual ~CostModel() = default;

  // Cost of the root node (id 0), called once after its record exists.
  virtual double root_log_cost(const NodeArena& arena) = 0;

  // Cost of a freshly generated child. Every strict ancestor of the child
  // has already been visited and weighted.
  virtual double child_log_cost(const NodeArena& arena, NodeId parent,
                                NodeId child) = 0;
};

// Slenderness cost lambda/pi(n).
class SopCost final : public CostModel {
 public:
  double root_log_cost(const NodeArena&) override { return 0.0; }
  double child_log_cost(const NodeArena& arena, NodeId, NodeId child) override;
};

// Classic d/pi(n); the root maps to log-cost 0 by convention.
class DopCost final : public CostModel {
 public:
  double root_log_cost(const NodeArena&) override { return 0.0; }
  double child_log_cost(const NodeArena& arena, NodeId, NodeId child) override;
};

// log(1 + d/pi), the self-counting form of the depth cost.
class OnePlusDopCost final : public CostModel {
 public:
  double root_log_cost(const NodeArena&) override { return 0.0; }
  double child_log_cost(const NodeArena& arena, NodeId, NodeId child) override;
};

// log(depth + 1): with FIFO tie-breaking this reproduces breadth-first order.
class BreadthCost final : public CostModel {
 public:
  double root_log_cost(const NodeArena&) override { return 0.0; }
  double child_log_cost(const NodeArena& arena, NodeId, NodeId child) override;
};

// ---------------------------------------------------------------------------
// The rerooting compound cost c^r.

// One retained rerooting ancestor. lambda_prime = c^r_a(n) * pi(n | a) is
// kept in linear space (it never exceeds relative depth + 1); probabilities
// and weights live in log space.
struct AncestorCostEntry {
  NodeId ancestor = kNoNode;
  double lambda_prime = 0.0;  // 0 exactly when n == ancestor
  double log_rel_prob = 0.0;  // log pi(n | ancestor) <= 0
  double log_weight = 0.0;    // log w_a; entries exist only for w_a > 0

  // log c^r_a(n) = log lambda_prime - log_rel_prob
  double log_base_cost() const;
  // log (c^r_a(n) / w_a)
  double log_weighted_cost() const { return log_base_cost() - log_weight; }
};

// Subset A(n) of weighted ancestors still eligible to minimize c^r for
// descendants of n. May be a superset of the minimal set; it must never
// drop an entry that could become the minimizer.
using AncestorSet = std::vector<AncestorCostEntry>;

struct AncestorUpdateResult {
  double log_cost = 0.0;
  AncestorSet set;
};

// Incremental c^r update: extends the parent's ancestor set to a child,
// adds the parent as a candidate when its weight is positive, takes the
// minimum, and filters dominated entries.
AncestorUpdateResult ancestor_set_update(const AncestorSet& parent_set,
                                         const NodeRecord& parent,
                                         NodeId parent_id, double cond_prob,
                                         double parent_weight);

class CrltsCost final : public CostModel {
 public:
  double root_log_cost(const NodeArena& arena) override;
  double child_log_cost(const NodeArena& arena, NodeId parent,
                        NodeId child) override;

  const AncestorSet& set_of(NodeId id) const { return sets_[id.v]; }

 private:
  std::vector<AncestorSet> sets_;
};

// min_i cost_i / w_i over monotone bases; monotone when every base is.
class CompoundCost final : public CostModel {
 public:
  CompoundCost(std::vector<std::unique_ptr<CostModel>> bases,
               std::vector<double> weights);
  double root_log_cost(const NodeArena& arena) override;
  double child_log_cost(const NodeArena& arena, NodeId parent,
                        NodeId child) override;

 private:
  std::vector<std::unique_ptr<CostModel>> bases_;
  std::vector<double> log_weights_;
};

// c^max(n) = max over ancestors (self included) of
// ctilde(n) = min_{n_t <= n, w_t > 0} lambda/pi(n | n_t) / w_t.
// Runnable only when the weight is a function of the node's signal, so it
// is known at insertion time. Kept for instrumentation; no dominance
// filtering is applied.
class CmaxCost final : public CostModel {
 public:
  explicit CmaxCost(std::function<double(const Signal&)> signal_weight)
      : signal_weight_(std::move(signal_weight)) {}

  double root_log_cost(const NodeArena& arena) override;
  double child_log_cost(const NodeArena& arena, NodeId parent,
                        NodeId child) override;

 private:
  struct Entry {
    double lambda = 1.0;        // rooted slenderness lambda(n | a), linear
    double log_rel_prob = 0.0;  // log pi(n | a)
    double log_weight = 0.0;
  };
  double ctilde(const std::vector<Entry>& entries) const;

  std::function<double(const Signal&)> signal_weight_;
  std::vector<std::vector<Entry>> entries_;
  std::vector<double> cmax_;  // per node, log space
};

// ---------------------------------------------------------------------------
// Direct-summation oracles over an explicit tree. weights[id] is the
// rerooting weight of the node with that id; the root weight must be
// positive. All return natural-log costs.

// min over strict weighted ancestors a of (lambda/pi(n|a) - 1) / w_a;
// the root returns the convention cost 1 (log 0).
double naive_crlts_log_cost(const NodeArena& arena,
                            std::span<const double> weights, NodeId node);

// As above but over ancestors including the node itself, without the -1.
double ctilde_log_cost(const NodeArena& arena, std::span<const double> weights,
                       NodeId node);

// max over ancestors including self of ctilde; monotone along every path.
double cmax_log_cost(const NodeArena& arena, std::span<const double> weights,
                     NodeId node);

}  // namespace rootlts
