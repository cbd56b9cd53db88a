#pragma once

#include <chrono>
#include <type_traits>
#include <utility>

#include "hedgefw/core_model.hpp"

namespace hedgefw {

struct TrialMetrics {
  double pred_error = 0.0;
  double resid_error = 0.0;
  double est_error = 0.0;
  double support_f1 = 0.0;
  double wall_time_s = 0.0;
};

/// (1/sqrt(n)) ||X (b_hat - beta)||_2, measured against the true signal.
double prediction_error(const RegressionInstance& instance, const GroundTruth& truth,
                        const Vector& b_hat);

/// (1/sqrt(n)) ||y - X b_hat||_2, measured against the noisy observations.
double residual_error(const RegressionInstance& instance, const Vector& b_hat);

double estimation_error(const GroundTruth& truth, const Vector& b_hat);

inline constexpr double kSupportThreshold = 1e-6;

/// F1 score of {j : |b_hat_j| > threshold} against the true support.
/// Two empty supports score 1.
double support_f1(const GroundTruth& truth, const Vector& b_hat,
                  double threshold = kSupportThreshold);

TrialMetrics evaluate(const RegressionInstance& instance, const GroundTruth& truth,
                      const Vector& b_hat, double wall_time_s);

template <class T>
struct Timed {
  T value;
  double wall_time_s;
};

/// Runs the action under a steady clock.
template <class F>
auto time_block(F&& action) {
  using R = std::invoke_result_t<F>;
  const auto start = std::chrono::steady_clock::now();
  if constexpr (std::is_void_v<R>) {
    std::forward<F>(action)();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return dt.count();
  } else {
    R value = std::forward<F>(action)();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return Timed<R>{std::move(value), dt.count()};
  }
}

}  // namespace hedgefw
