#pragma once

// Exponential-weights (Hedge) aggregation over a fixed, finite set of experts.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hedgefw {

/// Lower bound applied to every unnormalized weight; zero is absorbing
/// under multiplicative updates.
inline constexpr double kHedgeWeightFloor = 1e-300;

struct HedgeState {
  std::vector<double> weights;
  std::size_t step_count = 0;
  /// log of the unnormalized weights, shifted so the largest is 0. Updates
  /// run on these, so a weight that sits at the floor for a while still
  /// reflects its full loss history when it recovers. When empty (a state
  /// built from weights alone) they are derived from `weights`.
  std::vector<double> log_weights;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Uniform weights 1/num_experts. Throws if num_experts == 0.
HedgeState hedge_init(std::size_t num_experts);

/// w_r <- w_r exp(-eta loss_r), renormalized. Losses are shifted by their
/// minimum before exponentiation.
HedgeState hedge_update(const HedgeState& state, std::span<const double> losses, double eta);

/// Index of the maximal weight when it carries at least 1 - tolerance of the mass.
std::optional<std::size_t> is_dirac(const HedgeState& state, double tolerance);

/// Index of the largest weight, smallest index on ties.
std::size_t argmax_weight(std::span<const double> weights);

}  // namespace hedgefw
