#include "hedgefw/stochastic_fw.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hedgefw {
namespace {

void require_finite(const Eigen::Ref<const Vector>& v, const char* what) {
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v(j))) {
      throw Error(ErrorCode::kNonFinite,
                  std::string("non-finite ") + what + " at index " + std::to_string(j));
    }
  }
}

}  // namespace

SufficientStats SufficientStats::zeros(Eigen::Index p) {
  return SufficientStats{Eigen::MatrixXd::Zero(p, p), Vector::Zero(p), 0};
}

void stats_update(SufficientStats& stats, const Eigen::Ref<const Vector>& x_row, double y) {
  if (x_row.size() != stats.p()) {
    throw Error(ErrorCode::kDimensionMismatch, "observation length does not match stats");
  }
  require_finite(x_row, "observation entry");
  if (!std::isfinite(y)) throw Error(ErrorCode::kNonFinite, "non-finite response");

  const std::size_t i = stats.count + 1;
  const double keep = 1.0 - 1.0 / static_cast<double>(i);
  const double fresh = 1.0 / static_cast<double>(i);
  // (x_j x_k) is formed before scaling, so entries (j,k) and (k,j) see the
  // same rounding and alpha_bar stays exactly symmetric.
  const Eigen::Index p = stats.p();
  const double* x = x_row.data();
  for (Eigen::Index k = 0; k < p; ++k) {
    double* col = stats.alpha_bar.col(k).data();
    const double xk = x[k];
    for (Eigen::Index j = 0; j < p; ++j) col[j] = keep * col[j] + fresh * (xk * x[j]);
  }
  stats.beta_bar = keep * stats.beta_bar + (fresh * y) * x_row;
  stats.count = i;
}

SufficientStats full_batch_stats(const RegressionInstance& instance) {
  SufficientStats stats = SufficientStats::zeros(instance.p());
  for (Eigen::Index i = 0; i < instance.n(); ++i) {
    stats_update(stats, instance.x().row(i).transpose(), instance.y()(i));
  }
  return stats;
}

Vector gradient_estimate(const SufficientStats& stats, const Vector& b) {
  if (stats.count == 0) {
    throw Error(ErrorCode::kInvalidArgument, "gradient estimate needs at least one observation");
  }
  if (b.size() != stats.p()) {
    throw Error(ErrorCode::kDimensionMismatch, "iterate length does not match stats");
  }
  // FW iterates are sparse (at most t nonzeros after t steps); walk columns
  // of the symmetric alpha_bar only where b is nonzero.
  Vector g = -stats.beta_bar;
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    if (b(j) != 0.0) g.noalias() += b(j) * stats.alpha_bar.col(j);
  }
  return g;
}

Vertex l1_lmo_vertex(const Vector& gradient, double radius) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "LMO radius must be positive");
  }
  require_finite(gradient, "gradient entry");
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index j = 0; j < gradient.size(); ++j) {
    const double a = std::abs(gradient(j));
    if (a > best_abs) {
      best_abs = a;
      best = j;
    }
  }
  if (gradient.size() == 0 || best_abs == 0.0) return Vertex{0, 0.0};
  return Vertex{best, gradient(best) > 0.0 ? -radius : radius};
}

Vector l1_lmo(const Vector& gradient, double radius) {
  const Vertex v = l1_lmo_vertex(gradient, radius);
  Vector d = Vector::Zero(gradient.size());
  if (v.value != 0.0) d(v.index) = v.value;
  return d;
}

FwIterate FwIterate::origin(Eigen::Index p, double radius) {
  if (!(std::isfinite(radius) && radius > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ball radius must be positive");
  }
  return FwIterate{Vector::Zero(p), radius, 0};
}

double fw_step_size(std::size_t t, double k_step) {
  return std::min(1.0, k_step / (static_cast<double>(t) + k_step - 1.0));
}

double l1_excess(const FwIterate& iterate) {
  return std::max(0.0, iterate.b.lpNorm<1>() - iterate.radius);
}

namespace {

double check_feasible(const FwIterate& iterate) {
  const double excess = l1_excess(iterate);
  if (excess > kBallTolerance) {
    throw Error(ErrorCode::kInvalidArgument,
                "iterate left the l1 ball by " + std::to_string(excess));
  }
  return excess;
}

}  // namespace

double fw_step(FwIterate& iterate, const Vector& direction, double k_step) {
  if (direction.size() != iterate.b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "direction length does not match iterate");
  }
  if (direction.lpNorm<1>() > iterate.radius + kBallTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "direction lies outside the l1 ball");
  }
  const std::size_t t = iterate.step_index + 1;
  const double gamma = fw_step_size(t, k_step);
  iterate.b = (1.0 - gamma) * iterate.b + gamma * direction;
  iterate.step_index = t;
  return check_feasible(iterate);
}

double fw_step(FwIterate& iterate, const Vertex& direction, double k_step) {
  if (std::abs(direction.value) > iterate.radius + kBallTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "direction lies outside the l1 ball");
  }
  const std::size_t t = iterate.step_index + 1;
  const double gamma = fw_step_size(t, k_step);
  iterate.b *= (1.0 - gamma);
  if (direction.value != 0.0) iterate.b(direction.index) += gamma * direction.value;
  iterate.step_index = t;
  return check_feasible(iterate);
}

double predict(const Vector& b, const Eigen::Ref<const Vector>& x_row) {
  if (b.size() != x_row.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "prediction with mismatched lengths");
  }
  const double v = x_row.dot(b);
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFinite, "non-finite prediction");
  return v;
}

double half_mean_squared_loss(const RegressionInstance& instance, const Vector& b) {
  return 0.5 * (instance.y() - instance.x() * b).squaredNorm() / static_cast<double>(instance.n());
}

FwIterate batch_frank_wolfe(const SufficientStats& stats, double radius, std::size_t iterations,
                            double k_step) {
  FwIterate it = FwIterate::origin(stats.p(), radius);
  for (std::size_t k = 0; k < iterations; ++k) {
    fw_step(it, l1_lmo_vertex(gradient_estimate(stats, it.b), radius), k_step);
  }
  return it;
}

}  // namespace hedgefw
