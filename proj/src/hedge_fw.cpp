#include "hedgefw/hedge_fw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hedgefw/stochastic_fw.hpp"

namespace hedgefw {
namespace {

// Running average of x x^T, kept only for the columns the learners read.
// The fast path touches column j of alpha_bar only after some LMO picks
// coordinate j, which is usually a small subset of the p columns. A column
// first requested at step i is rebuilt by replaying the recurrence of
// stats_update over rows 0..i-1, so its entries are bit-identical to the
// full matrix.
class LazyGram {
 public:
  explicit LazyGram(const Matrix& x) : x_(x), columns_(static_cast<std::size_t>(x.cols())) {}

  /// Absorbs the next row of the design.
  void absorb() {
    const std::size_t i = count_ + 1;
    const double keep = 1.0 - 1.0 / static_cast<double>(i);
    const double fresh = 1.0 / static_cast<double>(i);
    const double* x = x_.row(static_cast<Eigen::Index>(count_)).data();
    for (Eigen::Index j : touched_) blend(columns_[static_cast<std::size_t>(j)], x, j, keep, fresh);
    count_ = i;
  }

  const Vector& column(Eigen::Index j) {
    Vector& col = columns_[static_cast<std::size_t>(j)];
    if (col.size() == 0) {
      col = Vector::Zero(x_.cols());
      for (std::size_t k = 1; k <= count_; ++k) {
        const double keep = 1.0 - 1.0 / static_cast<double>(k);
        const double fresh = 1.0 / static_cast<double>(k);
        blend(col, x_.row(static_cast<Eigen::Index>(k - 1)).data(), j, keep, fresh);
      }
      touched_.push_back(j);
    }
    return col;
  }

 private:
  void blend(Vector& col, const double* x, Eigen::Index j, double keep, double fresh) const {
    double* c = col.data();
    const double xj = x[j];
    for (Eigen::Index m = 0; m < x_.cols(); ++m) c[m] = keep * c[m] + fresh * (xj * x[m]);
  }

  const Matrix& x_;
  std::vector<Vector> columns_;
  std::vector<Eigen::Index> touched_;
  std::size_t count_ = 0;
};

}  // namespace

HedgeFwOutput run_hedge_fw(const RegressionInstance& instance, const CandidateGrid& grid,
                           const HedgeConfig& hedge_cfg, const FwConfig& fw_cfg,
                           const HedgeFwOptions& options) {
  return run_hedge_fw(instance, grid.radii(), hedge_cfg, fw_cfg, options);
}

HedgeFwOutput run_hedge_fw(const RegressionInstance& instance, std::span<const double> radii,
                           const HedgeConfig& hedge_cfg, const FwConfig& fw_cfg,
                           const HedgeFwOptions& options) {
  hedge_cfg.check();
  fw_cfg.check();
  if (radii.empty()) throw Error(ErrorCode::kInvalidArgument, "no candidate radii");
  const std::size_t num_experts = radii.size();
  const auto n = static_cast<std::size_t>(instance.n());
  const Eigen::Index p = instance.p();

  HedgeFwOutput out;
  out.radii.assign(radii.begin(), radii.end());
  out.eta = hedge_cfg.resolve_eta(num_experts, n);
  out.cumulative_loss.assign(num_experts, 0.0);
  if (options.record_trace) {
    out.trace.emplace();
    out.trace->reserve(n);
  }

  std::vector<FwIterate> learners;
  learners.reserve(num_experts);
  for (double r : radii) learners.push_back(FwIterate::origin(p, r));

  // The exact path keeps the full statistics; the fast path needs only
  // beta_bar and the columns of alpha_bar its LMOs select.
  SufficientStats stats = options.exact_gradient
                              ? SufficientStats::zeros(p)
                              : SufficientStats{Eigen::MatrixXd(), Vector::Zero(p), 0};
  LazyGram gram(instance.x());
  HedgeState hedge = hedge_init(num_experts);
  std::vector<double> losses(num_experts);
  std::vector<double> squared_errors(num_experts);
  std::vector<double> predictions(num_experts);
  // Cached alpha_bar * b_r per expert; b_r = 0 initially.
  std::vector<Vector> alpha_b(num_experts, Vector::Zero(p));
  Vector gradient(p);

  for (std::size_t i = 0; i < n; ++i) {
    try {
      const auto x_row = instance.x().row(static_cast<Eigen::Index>(i)).transpose();
      const double y = instance.y()(static_cast<Eigen::Index>(i));

      // Score with b_r^(i-1) before the observation is absorbed.
      for (std::size_t r = 0; r < num_experts; ++r) {
        predictions[r] = predict(learners[r].b, x_row);
        const double resid = y - predictions[r];
        squared_errors[r] = resid * resid;
        losses[r] = hedge_cfg.loss_cap ? std::min(squared_errors[r], *hedge_cfg.loss_cap)
                                       : squared_errors[r];
        out.cumulative_loss[r] += losses[r];
      }

      const double keep = 1.0 - 1.0 / static_cast<double>(i + 1);
      const double fresh = 1.0 / static_cast<double>(i + 1);
      if (options.exact_gradient) {
        stats_update(stats, x_row, y);
      } else {
        stats.beta_bar = keep * stats.beta_bar + (fresh * y) * x_row;
        stats.count = i + 1;
        gram.absorb();
      }
      for (std::size_t r = 0; r < num_experts; ++r) {
        FwIterate& learner = learners[r];
        Vector& product = alpha_b[r];
        if (options.exact_gradient) {
          product = stats.alpha_bar * learner.b;
        } else {
          // alpha_bar^(i) b = (1 - 1/i) alpha_bar^(i-1) b + (1/i) x (x^T b).
          product = keep * product + (fresh * predictions[r]) * x_row;
        }
        gradient.noalias() = product - stats.beta_bar;
        const Vertex vertex = l1_lmo_vertex(gradient, learner.radius);
        const double gamma = fw_step_size(learner.step_index + 1, fw_cfg.k_step);
        out.max_l1_excess = std::max(out.max_l1_excess, fw_step(learner, vertex, fw_cfg.k_step));
        // Keep the cache equal to alpha_bar^(i) b_r^(i).
        product *= (1.0 - gamma);
        if (vertex.value != 0.0 && !options.exact_gradient) {
          product.noalias() += (gamma * vertex.value) * gram.column(vertex.index);
        }
      }

      hedge = hedge_update(hedge, losses, out.eta);
      if (out.trace) out.trace->push_back(HedgeFwTraceStep{squared_errors, hedge.weights});
    } catch (const Error& e) {
      throw Error(e.code(), "observation " + std::to_string(i) + ": " + e.what());
    }
  }

  out.weights = std::move(hedge.weights);
  out.iterates.reserve(num_experts);
  for (FwIterate& learner : learners) out.iterates.push_back(std::move(learner.b));
  return out;
}

Vector aggregate_estimator(const HedgeFwOutput& output) {
  if (output.iterates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no iterates to aggregate");
  }
  Vector sum = Vector::Zero(output.iterates.front().size());
  for (std::size_t r = 0; r < output.iterates.size(); ++r) {
    sum.noalias() += output.weights[r] * output.iterates[r];
  }
  return sum;
}

Selection select_estimator(const HedgeFwOutput& output, double tolerance) {
  const HedgeState state{output.weights, 0, {}};
  if (const auto k = is_dirac(state, tolerance)) {
    return Selection{*k, output.iterates[*k], true};
  }
  const std::size_t k = argmax_weight(output.weights);
  return Selection{k, output.iterates[k], false};
}

HedgeConsistency check_hedge_consistency(const HedgeFwOutput& output) {
  const auto& loss = output.cumulative_loss;
  const std::size_t g = loss.size();
  HedgeConsistency result;
  const double best = *std::min_element(loss.begin(), loss.end());
  std::vector<double> ideal(g);
  double total = 0.0;
  for (std::size_t r = 0; r < g; ++r) {
    ideal[r] = std::exp(-output.eta * (loss[r] - best));
    total += ideal[r];
  }
  for (std::size_t r = 0; r < g; ++r) {
    ideal[r] /= total;
    if (ideal[r] >= kConsistencyFloor) {
      result.max_relative_error = std::max(
          result.max_relative_error, std::abs(output.weights[r] - ideal[r]) / ideal[r]);
    }
  }
  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      // Weights whose ideal value is below the floor have been clamped along
      // the way and no longer carry ordering information.
      if (!(loss[a] < loss[b]) || ideal[a] < kConsistencyFloor) continue;
      if (!(output.weights[a] > output.weights[b])) result.ordering_consistent = false;
    }
  }
  return result;
}

CandidateGrid default_grid(const RegressionInstance& instance, std::size_t size) {
  if (size < 2) throw Error(ErrorCode::kInvalidArgument, "grid size must be at least 2");
  const Matrix& x = instance.x();
  const double n = static_cast<double>(instance.n());

  double min_sq_norm = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double s = x.col(j).squaredNorm();
    if (s > 0.0) min_sq_norm = std::min(min_sq_norm, s);
  }
  if (!std::isfinite(min_sq_norm)) {
    throw Error(ErrorCode::kDegenerateDesign, "all-zero design matrix: radius scale undefined");
  }
  const double corr = (x.transpose() * instance.y()).lpNorm<Eigen::Infinity>();
  if (!(corr > 0.0)) {
    throw Error(ErrorCode::kDegenerateDesign, "X^T y vanishes: radius scale undefined");
  }
  const double r_max = corr / (min_sq_norm / n);

  std::vector<double> radii(size);
  const double lo = std::log10(r_max) - 3.0;
  const double step = 3.0 / static_cast<double>(size - 1);
  for (std::size_t k = 0; k < size; ++k) {
    radii[k] = std::pow(10.0, lo + step * static_cast<double>(k));
  }
  radii.front() = r_max * 1e-3;
  radii.back() = r_max;
  return CandidateGrid(std::move(radii));
}

}  // namespace hedgefw
