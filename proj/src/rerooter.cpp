#include "rootlts/rerooter.hpp"

#include <cmath>
#include <stdexcept>

namespace rootlts {

double uniform_clue_weight(bool is_clue, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("uniform_clue_weight: q = 0");
  return is_clue ? 1.0 / static_cast<double>(q) : 0.0;
}

double per_count_weight(bool is_clue, std::uint64_t q_t) {
  if (!is_clue) return 0.0;
  if (q_t == 0) throw std::invalid_argument("per_count_weight: q_t = 0 at a clue");
  return 1.0 / static_cast<double>(q_t);
}

double robust_weight(double w_tilde, double cum_input_leq) {
  if (cum_input_leq <= 0.0) return 0.0;
  return w_tilde / cum_input_leq;
}

double FTransform::operator()(double x) const {
  switch (kind) {
    case FKind::kIdentity:
      return x;
    case FKind::kNegInvLog:
      return -1.0 / std::log(std::exp(1.0) + x);
    case FKind::kSqrt:
      return std::sqrt(x);
    case FKind::kLog1pAlpha:
      return std::log1p(alpha * x);
  }
  return x;
}

double f_transform_weight(const FTransform& f, double cum_input_leq,
                          double cum_input_lt) {
  double w = f(cum_input_leq) - f(cum_input_lt);
  if (w < 0.0) {
    throw std::logic_error("f_transform_weight: f is decreasing on the interval");
  }
  return w;
}

double exponential_clue_weight(bool is_clue, std::uint64_t q_t) {
  if (!is_clue) return 0.0;
  return std::ldexp(1.0, static_cast<int>(q_t > 60 ? 60 : q_t));
}

WeightDecision PerTypeCountRerooter::weight(const VisitContext& ctx) {
  if (!ctx.signal.is_clue()) return {0.0, 0.0};
  auto z = static_cast<std::size_t>(ctx.signal.clue_type);
  double w = 1.0 / (1.0 + static_cast<double>(ctx.counters.clues_by_type[z]));
  return {w, w};
}

WeightDecision PerTypeFixedRerooter::weight(const VisitContext& ctx) {
  if (!ctx.signal.is_clue()) return {0.0, 0.0};
  auto z = static_cast<std::size_t>(ctx.signal.clue_type);
  if (z >= weight_by_type_.size()) return {0.0, 0.0};
  double w = weight_by_type_[z];
  return {w, w};
}

WeightDecision RobustRerooter::weight(const VisitContext& ctx) {
  double w_tilde = inner_->weight(ctx).input_weight;
  if (ctx.step == 1 && w_tilde == 0.0) w_tilde = 1.0;
  double w = robust_weight(w_tilde, ctx.cum_input_weight_before + w_tilde);
  return {w, w_tilde};
}

WeightDecision FTransformRerooter::weight(const VisitContext& ctx) {
  double w_tilde = inner_->weight(ctx).input_weight;
  if (ctx.step == 1 && w_tilde == 0.0) w_tilde = 1.0;
  double w = f_transform_weight(f_, ctx.cum_input_weight_before + w_tilde,
                                ctx.cum_input_weight_before);
  return {w, w_tilde};
}

}  // namespace rootlts
