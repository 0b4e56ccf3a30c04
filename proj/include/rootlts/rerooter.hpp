#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "rootlts/node.hpp"

namespace rootlts {

// Counters accumulated by the engine over a run; indices are clue types.
struct SignalCounters {
  std::vector<std::uint64_t> clues_by_type;  // index 0 unused
  std::uint64_t total_clues = 0;

  void resize_for(std::int32_t max_clue_type) {
    clues_by_type.assign(static_cast<std::size_t>(max_clue_type) + 1, 0);
  }
  void count(const Signal& s) {
    if (!s.is_clue()) return;
    ++total_clues;
    auto z = static_cast<std::size_t>(s.clue_type);
    if (z >= clues_by_type.size()) clues_by_type.resize(z + 1, 0);
    ++clues_by_type[z];
  }
};

// Everything a rerooter may look at when the node n_t is visited: only
// information available at or before step t.
struct VisitContext {
  const NodeRecord& node;
  const Signal& signal;
  std::uint64_t step = 0;                // t, 1-based
  const SignalCounters& counters;        // includes the current visit
  double cum_weight_before = 0.0;        // W_{<t}
  double cum_input_weight_before = 0.0;  // W~_{<t}
};

// weight is w_t as used by the cost function and W; input_weight is the
// pre-transformation w~_t (equal to weight for untransformed schemes).
struct WeightDecision {
  double weight = 0.0;
  double input_weight = 0.0;
};

class Rerooter {
 public:
  virtual ~Rerooter() = default;
  virtual WeightDecision weight(const VisitContext& ctx) = 0;
};

// ---------------------------------------------------------------------------
// Weight primitives (one per scheme).

// 1/q for clue nodes, 0 otherwise; q is the known total clue count.
double uniform_clue_weight(bool is_clue, std::uint64_t q);

// 1/q_t for clue nodes where q_t counts clues seen so far including the
// current one. Cumulative sum over a run is at most 1 + ln q_T.
double per_count_weight(bool is_clue, std::uint64_t q_t);

// w~_t / W~_{<=t}; returns 0 when the denominator is 0.
double robust_weight(double w_tilde, double cum_input_leq);

enum class FKind { kIdentity, kNegInvLog, kSqrt, kLog1pAlpha };

struct FTransform {
  FKind kind = FKind::kIdentity;
  double alpha = 1.0;

  double operator()(double x) const;
};

// f(W~_{<=t}) - f(W~_{<=t-1}) for nondecreasing f.
double f_transform_weight(const FTransform& f, double cum_input_leq,
                          double cum_input_lt);

// 2^{q_t} for clue nodes; saturates at q_t = 60 to keep the linear
// accumulators finite.
double exponential_clue_weight(bool is_clue, std::uint64_t q_t);

// ---------------------------------------------------------------------------
// Rerooters.

class NullRerooter final : public Rerooter {
 public:
  WeightDecision weight(const VisitContext&) override { return {0.0, 0.0}; }
};

class ConstantRerooter final : public Rerooter {
 public:
  explicit ConstantRerooter(double w) : w_(w) {}
  WeightDecision weight(const VisitContext&) override { return {w_, w_}; }

 private:
  double w_;
};

class UniformClueRerooter final : public Rerooter {
 public:
  explicit UniformClueRerooter(std::uint64_t q) : q_(q) {}
  WeightDecision weight(const VisitContext& ctx) override {
    double w = uniform_clue_weight(ctx.signal.is_clue(), q_);
    return {w, w};
  }

 private:
  std::uint64_t q_;
};

class PerCountRerooter final : public Rerooter {
 public:
  WeightDecision weight(const VisitContext& ctx) override {
    double w = per_count_weight(ctx.signal.is_clue(), ctx.counters.total_clues);
    return {w, w};
  }
};

// w_t = 1 / (1 + q_{z,t}) for a clue of type z.
class PerTypeCountRerooter final : public Rerooter {
 public:
  WeightDecision weight(const VisitContext& ctx) override;
};

// Fixed weight per clue type (e.g. 1/M_z); types beyond the table get 0.
class PerTypeFixedRerooter final : public Rerooter {
 public:
  explicit PerTypeFixedRerooter(std::vector<double> weight_by_type)
      : weight_by_type_(std::move(weight_by_type)) {}
  WeightDecision weight(const VisitContext& ctx) override;

 private:
  std::vector<double> weight_by_type_;  // index by clue type, [0] unused
};

class RewardRerooter final : public Rerooter {
 public:
  WeightDecision weight(const VisitContext& ctx) override {
    return {ctx.signal.reward, ctx.signal.reward};
  }
};

// Emits raw input weights 2^{q_t} at clue nodes; normally wrapped in
// RobustRerooter.
class ExponentialClueRerooter final : public Rerooter {
 public:
  WeightDecision weight(const VisitContext& ctx) override {
    double w = exponential_clue_weight(ctx.signal.is_clue(),
                                       ctx.counters.total_clues);
    return {w, w};
  }
};

// w_t = w~_t / W~_{<=t} where w~ comes from the inner rerooter. The first
// input weight defaults to 1 when the inner scheme emits 0 at the root.
class RobustRerooter final : public Rerooter {
 public:
  explicit RobustRerooter(std::unique_ptr<Rerooter> inner)
      : inner_(std::move(inner)) {}
  WeightDecision weight(const VisitContext& ctx) override;

 private:
  std::unique_ptr<Rerooter> inner_;
};

// w_t = f(W~_{<=t}) - f(W~_{<t}); same root default as RobustRerooter.
class FTransformRerooter final : public Rerooter {
 public:
  FTransformRerooter(FTransform f, std::unique_ptr<Rerooter> inner)
      : f_(f), inner_(std::move(inner)) {}
  WeightDecision weight(const VisitContext& ctx) override;

 private:
  FTransform f_;
  std::unique_ptr<Rerooter> inner_;
};

}  // namespace rootlts
