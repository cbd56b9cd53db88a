#include "hedgefw/hedge.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hedgefw/error.hpp"

namespace hedgefw {

HedgeState hedge_init(std::size_t num_experts) {
  if (num_experts == 0) {
    throw Error(ErrorCode::kInvalidArgument, "hedge needs at least one expert");
  }
  return HedgeState{std::vector<double>(num_experts, 1.0 / static_cast<double>(num_experts)), 0,
                    std::vector<double>(num_experts, 0.0)};
}

HedgeState hedge_update(const HedgeState& state, std::span<const double> losses, double eta) {
  if (losses.size() != state.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "hedge update got " + std::to_string(losses.size()) + " losses for " +
                    std::to_string(state.size()) + " experts");
  }
  if (!(std::isfinite(eta) && eta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "hedge learning rate must be positive");
  }
  for (std::size_t r = 0; r < losses.size(); ++r) {
    if (!std::isfinite(losses[r])) {
      throw Error(ErrorCode::kNonFinite, "non-finite loss for expert " + std::to_string(r));
    }
  }

  const std::size_t g = state.size();
  HedgeState next{std::vector<double>(g), state.step_count + 1, std::vector<double>(g)};
  const bool have_logs = state.log_weights.size() == g;
  const double shift = *std::min_element(losses.begin(), losses.end());
  for (std::size_t r = 0; r < g; ++r) {
    const double prior = have_logs ? state.log_weights[r]
                                   : std::log(std::max(state.weights[r], kHedgeWeightFloor));
    next.log_weights[r] = prior - eta * (losses[r] - shift);
  }
  const double top = *std::max_element(next.log_weights.begin(), next.log_weights.end());
  double total = 0.0;
  for (std::size_t r = 0; r < g; ++r) {
    next.log_weights[r] -= top;
    next.weights[r] = std::max(std::exp(next.log_weights[r]), kHedgeWeightFloor);
    total += next.weights[r];
  }
  for (double& w : next.weights) w /= total;
  return next;
}

std::size_t argmax_weight(std::span<const double> weights) {
  if (weights.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "argmax of an empty weight vector");
  }
  // max_element returns the first maximum, which is the smallest index.
  return static_cast<std::size_t>(std::max_element(weights.begin(), weights.end()) -
                                  weights.begin());
}

std::optional<std::size_t> is_dirac(const HedgeState& state, double tolerance) {
  if (!(tolerance > 0.0 && tolerance < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "dirac tolerance must lie in (0, 0.5)");
  }
  const std::size_t best = argmax_weight(state.weights);
  if (state.weights[best] >= 1.0 - tolerance) return best;
  return std::nullopt;
}

}  // namespace hedgefw
