#pragma once

// Hedge over a grid of l1 radii, one online stochastic Frank-Wolfe learner
// per radius. Single pass: each observation is first used to score every
// learner's prediction, then absorbed into the shared statistics.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hedgefw/core_model.hpp"
#include "hedgefw/hedge.hpp"

namespace hedgefw {

/// Per-observation diagnostics, recorded only when requested.
struct HedgeFwTraceStep {
  std::vector<double> squared_errors;  // charged to each expert at this step
  std::vector<double> weights;         // Hedge vector after this step
};

struct HedgeFwOutput {
  std::vector<double> radii;
  std::vector<double> weights;
  std::vector<Vector> iterates;
  std::vector<double> cumulative_loss;
  double eta = 0.0;
  /// Largest max(0, ||b_r||_1 - r) observed over every step and expert.
  double max_l1_excess = 0.0;
  std::optional<std::vector<HedgeFwTraceStep>> trace;
};

struct HedgeFwOptions {
  bool record_trace = false;
  /// Recompute alpha_bar * b from scratch at every step instead of updating
  /// the cached product; slower, used to cross-check the fast path.
  bool exact_gradient = false;
};

HedgeFwOutput run_hedge_fw(const RegressionInstance& instance, const CandidateGrid& grid,
                           const HedgeConfig& hedge_cfg, const FwConfig& fw_cfg,
                           const HedgeFwOptions& options = {});

/// Same driver over an arbitrary list of positive radii. Order and
/// duplicates are allowed here; expert r always refers to radii[r].
HedgeFwOutput run_hedge_fw(const RegressionInstance& instance, std::span<const double> radii,
                           const HedgeConfig& hedge_cfg, const FwConfig& fw_cfg,
                           const HedgeFwOptions& options = {});

/// sum_r h_r b_r.
Vector aggregate_estimator(const HedgeFwOutput& output);

struct Selection {
  std::size_t expert = 0;
  Vector beta;
  bool dirac = false;
};

/// The Dirac expert when there is one, otherwise the heaviest (smallest index on ties).
Selection select_estimator(const HedgeFwOutput& output, double tolerance);

/// How closely the final weights follow exp(-eta * cumulative loss).
struct HedgeConsistency {
  /// Largest |h_r - ideal_r| / ideal_r over experts whose ideal weight is
  /// above kConsistencyFloor; smaller ideals sit in the weight floor.
  double max_relative_error = 0.0;
  /// Lower cumulative loss carries strictly larger weight, for every pair
  /// whose better expert has an ideal weight of at least kConsistencyFloor.
  bool ordering_consistent = true;
};

inline constexpr double kConsistencyFloor = 1e-200;

HedgeConsistency check_hedge_consistency(const HedgeFwOutput& output);

/// Geometric grid of `size` radii from r_max 1e-3 to r_max, with
/// r_max = ||X^T y||_inf / (min_j ||X_j||^2 / n) taken over nonzero columns.
CandidateGrid default_grid(const RegressionInstance& instance, std::size_t size);

}  // namespace hedgefw
