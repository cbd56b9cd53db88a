#include "hedgefw/metrics.hpp"

#include <cmath>

namespace hedgefw {
namespace {

void require_length(Eigen::Index expected, const Vector& b) {
  if (b.size() != expected) {
    throw Error(ErrorCode::kDimensionMismatch, "estimate length does not match p");
  }
}

}  // namespace

double prediction_error(const RegressionInstance& instance, const GroundTruth& truth,
                        const Vector& b_hat) {
  require_length(instance.p(), b_hat);
  require_length(instance.p(), truth.beta);
  return (instance.x() * (b_hat - truth.beta)).norm() / std::sqrt(static_cast<double>(instance.n()));
}

double residual_error(const RegressionInstance& instance, const Vector& b_hat) {
  require_length(instance.p(), b_hat);
  return (instance.y() - instance.x() * b_hat).norm() / std::sqrt(static_cast<double>(instance.n()));
}

double estimation_error(const GroundTruth& truth, const Vector& b_hat) {
  require_length(truth.beta.size(), b_hat);
  return (b_hat - truth.beta).norm();
}

double support_f1(const GroundTruth& truth, const Vector& b_hat, double threshold) {
  require_length(truth.beta.size(), b_hat);
  std::size_t tp = 0, fp = 0, fn = 0;
  for (Eigen::Index j = 0; j < b_hat.size(); ++j) {
    const bool predicted = std::abs(b_hat(j)) > threshold;
    const bool actual = truth.beta(j) != 0.0;
    if (predicted && actual) ++tp;
    else if (predicted) ++fp;
    else if (actual) ++fn;
  }
  if (tp + fp + fn == 0) return 1.0;
  return 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
}

TrialMetrics evaluate(const RegressionInstance& instance, const GroundTruth& truth,
                      const Vector& b_hat, double wall_time_s) {
  return TrialMetrics{prediction_error(instance, truth, b_hat), residual_error(instance, b_hat),
                      estimation_error(truth, b_hat), support_f1(truth, b_hat), wall_time_s};
}

}  // namespace hedgefw
