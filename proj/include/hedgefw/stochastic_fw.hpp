#pragma once

// Online stochastic Frank-Wolfe for least squares over the l1 ball.
//
// The learner never sees the data matrix: it keeps running averages of
// x_i x_i^T and x_i y_i, which define the gradient of
// f(b) = (1/2i) sum_k (y_k - x_k^T b)^2 up to a constant, and takes one
// conditional-gradient step per absorbed observation.

#include <cstddef>

#include "hedgefw/core_model.hpp"

namespace hedgefw {

/// Running averages of x x^T and x y over the observations seen so far.
struct SufficientStats {
  Eigen::MatrixXd alpha_bar;
  Vector beta_bar;
  std::size_t count = 0;

  static SufficientStats zeros(Eigen::Index p);
  Eigen::Index p() const noexcept { return beta_bar.size(); }
};

/// Absorbs one observation: averages move to (1 - 1/i) old + (1/i) new.
void stats_update(SufficientStats& stats, const Eigen::Ref<const Vector>& x_row, double y);

/// Builds statistics from every row of an instance (the full-batch gradient).
SufficientStats full_batch_stats(const RegressionInstance& instance);

/// alpha_bar * b - beta_bar. Requires count >= 1.
Vector gradient_estimate(const SufficientStats& stats, const Vector& b);

/// A signed, scaled coordinate vector: the only kind of point the l1 LMO returns.
struct Vertex {
  Eigen::Index index = 0;
  double value = 0.0;  // zero encodes the zero direction
};

/// -radius * sign(g_j) e_j for the smallest j maximizing |g_j|; zero when g == 0.
Vertex l1_lmo_vertex(const Vector& gradient, double radius);
Vector l1_lmo(const Vector& gradient, double radius);

struct FwIterate {
  Vector b;
  double radius = 0.0;
  std::size_t step_index = 0;

  static FwIterate origin(Eigen::Index p, double radius);
};

/// Feasibility slack allowed on ||b||_1 <= radius.
inline constexpr double kBallTolerance = 1e-9;

/// Step size min(1, K / (t + K - 1)) for the t-th step (t >= 1).
double fw_step_size(std::size_t t, double k_step);

/// b <- (1 - gamma) b + gamma d with gamma from the schedule at t = step_index + 1.
/// Returns the resulting l1_excess; throws if it exceeds kBallTolerance.
double fw_step(FwIterate& iterate, const Vector& direction, double k_step);
double fw_step(FwIterate& iterate, const Vertex& direction, double k_step);

/// max(0, ||b||_1 - radius).
double l1_excess(const FwIterate& iterate);

double predict(const Vector& b, const Eigen::Ref<const Vector>& x_row);

/// (1/2n) ||y - X b||^2, the objective whose gradient full-batch stats produce.
double half_mean_squared_loss(const RegressionInstance& instance, const Vector& b);

/// Deterministic Frank-Wolfe with frozen statistics, starting at b = 0.
FwIterate batch_frank_wolfe(const SufficientStats& stats, double radius, std::size_t iterations,
                            double k_step = 2.0);

}  // namespace hedgefw
