#include "hedgefw/baseline_lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "hedgefw/rng.hpp"

namespace hedgefw {

LambdaGrid::LambdaGrid(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw Error(ErrorCode::kInvalidArgument, "lambda grid is empty");
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    if (!(std::isfinite(lambdas_[i]) && lambdas_[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "lambda " + std::to_string(i) + " is not positive");
    }
    if (i > 0 && !(lambdas_[i] < lambdas_[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "lambda grid must be strictly decreasing (index " + std::to_string(i) + ")");
    }
  }
}

double soft_threshold(double v, double threshold) {
  if (v > threshold) return v - threshold;
  if (v < -threshold) return v + threshold;
  return 0.0;
}

double lasso_objective(const RegressionInstance& instance, const Vector& b, double lambda) {
  return 0.5 * (instance.y() - instance.x() * b).squaredNorm() + lambda * b.lpNorm<1>();
}

namespace {

// Column-major working copy so that coordinate updates read contiguous columns.
struct CdProblem {
  Eigen::MatrixXd x;
  Vector y;
  Vector col_sq_norm;

  CdProblem(Eigen::MatrixXd x_in, Vector y_in) : x(std::move(x_in)), y(std::move(y_in)) {
    col_sq_norm = x.colwise().squaredNorm().transpose();
  }

  double objective(const Vector& b, const Vector& resid, double lambda) const {
    return 0.5 * resid.squaredNorm() + lambda * b.lpNorm<1>();
  }
};

LassoFit solve_cd(const CdProblem& prob, double lambda, Vector b, const LassoOptions& opt) {
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "lambda must be positive");
  }
  const Eigen::Index p = prob.x.cols();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (prob.col_sq_norm(j) == 0.0) b(j) = 0.0;
  }
  Vector resid = prob.y - prob.x * b;

  LassoFit fit;
  for (fit.sweeps = 0; fit.sweeps < opt.max_iter;) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double norm = prob.col_sq_norm(j);
      if (norm == 0.0) continue;
      const double old = b(j);
      const double rho = prob.x.col(j).dot(resid) + norm * old;
      const double updated = soft_threshold(rho, lambda) / norm;
      if (updated != old) {
        resid.noalias() -= (updated - old) * prob.x.col(j);
        b(j) = updated;
        max_change = std::max(max_change, std::abs(updated - old));
      }
    }
    ++fit.sweeps;
    if (opt.record_objective) fit.objective_history.push_back(prob.objective(b, resid, lambda));
    if (max_change < opt.tol) {
      fit.converged = true;
      break;
    }
  }
  fit.objective = prob.objective(b, resid, lambda);
  fit.beta = std::move(b);
  return fit;
}

double lambda_max_of(const Eigen::MatrixXd& x, const Vector& y) {
  if ((x.array() == 0.0).all()) {
    throw Error(ErrorCode::kDegenerateDesign, "all-zero design matrix: lambda_max undefined");
  }
  const double m = (x.transpose() * y).lpNorm<Eigen::Infinity>();
  if (!(m > 0.0)) throw Error(ErrorCode::kDegenerateDesign, "X^T y vanishes: lambda_max is 0");
  return m;
}

}  // namespace

LassoFit lasso_cd(const RegressionInstance& instance, double lambda,
                  const std::optional<Vector>& warm_start, const LassoOptions& options) {
  const CdProblem prob(instance.x(), instance.y());
  Vector b = Vector::Zero(instance.p());
  if (warm_start) {
    if (warm_start->size() != instance.p()) {
      throw Error(ErrorCode::kDimensionMismatch, "warm start length does not match p");
    }
    b = *warm_start;
  }
  return solve_cd(prob, lambda, std::move(b), options);
}

LambdaGrid lambda_path(const RegressionInstance& instance, std::size_t size) {
  if (size < 2) throw Error(ErrorCode::kInvalidArgument, "lambda path needs at least 2 points");
  const double lmax = lambda_max_of(instance.x(), instance.y());
  std::vector<double> lambdas(size);
  const double top = std::log10(lmax);
  const double step = 3.0 / static_cast<double>(size - 1);
  for (std::size_t k = 0; k < size; ++k) {
    lambdas[k] = std::pow(10.0, top - step * static_cast<double>(k));
  }
  lambdas.front() = lmax;
  lambdas.back() = lmax * 1e-3;
  return LambdaGrid(std::move(lambdas));
}

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "fold count must satisfy 2 <= k <= n (k=" + std::to_string(k) +
                    ", n=" + std::to_string(n) + ")");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(i + 1)]);
  }
  std::vector<std::vector<std::size_t>> folds(k);
  std::size_t pos = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t len = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                    perm.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return folds;
}

CvResult cv_lasso(const RegressionInstance& instance, const LambdaGrid& grid, std::size_t k,
                  std::uint64_t seed, const CvOptions& options) {
  const auto n = static_cast<std::size_t>(instance.n());
  const Eigen::Index p = instance.p();
  const auto folds = kfold_split(n, k, seed);

  Eigen::MatrixXd x = instance.x();
  Vector scale = Vector::Ones(p);
  if (options.standardize) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const double mean = x.col(j).mean();
      const double var = (x.col(j).array() - mean).square().sum() / static_cast<double>(n);
      if (var > 0.0) scale(j) = 1.0 / std::sqrt(var);
    }
    x = x * scale.asDiagonal();
  }

  const std::size_t num_lambdas = grid.size();
  std::vector<std::vector<double>> fold_mse(num_lambdas);
  CvResult result;

  std::vector<char> held_out(n);
  for (const auto& fold : folds) {
    std::fill(held_out.begin(), held_out.end(), 0);
    for (std::size_t i : fold) held_out[i] = 1;
    const auto n_train = static_cast<Eigen::Index>(n - fold.size());
    Eigen::MatrixXd x_train(n_train, p);
    Vector y_train(n_train);
    Eigen::MatrixXd x_test(static_cast<Eigen::Index>(fold.size()), p);
    Vector y_test(static_cast<Eigen::Index>(fold.size()));
    Eigen::Index tr = 0, te = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      if (held_out[i]) {
        x_test.row(te) = x.row(ii);
        y_test(te++) = instance.y()(ii);
      } else {
        x_train.row(tr) = x.row(ii);
        y_train(tr++) = instance.y()(ii);
      }
    }
    const CdProblem prob(std::move(x_train), std::move(y_train));
    // Keep the per-observation penalty equal to the full-data objective.
    const double lambda_scale = static_cast<double>(n_train) / static_cast<double>(n);
    Vector b = Vector::Zero(p);
    for (std::size_t l = 0; l < num_lambdas; ++l) {
      LassoFit fit = solve_cd(prob, grid[l] * lambda_scale, b, options.solver);
      b = fit.beta;
      if (!fit.converged) {
        ++result.skipped_fits;
        continue;
      }
      fold_mse[l].push_back((y_test - x_test * fit.beta).squaredNorm() /
                            static_cast<double>(fold.size()));
    }
  }

  result.cv_curve.resize(num_lambdas);
  std::optional<std::size_t> best;
  for (std::size_t l = 0; l < num_lambdas; ++l) {
    CvPoint& pt = result.cv_curve[l];
    pt.lambda = grid[l];
    pt.folds_used = fold_mse[l].size();
    if (fold_mse[l].empty()) {
      pt.mean_mse = std::numeric_limits<double>::quiet_NaN();
      pt.std_mse = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const double m = static_cast<double>(fold_mse[l].size());
    pt.mean_mse = std::accumulate(fold_mse[l].begin(), fold_mse[l].end(), 0.0) / m;
    double ss = 0.0;
    for (double v : fold_mse[l]) ss += (v - pt.mean_mse) * (v - pt.mean_mse);
    pt.std_mse = fold_mse[l].size() > 1 ? std::sqrt(ss / (m - 1.0)) : 0.0;
    // The grid is decreasing, so a later tie is a smaller lambda.
    if (!best || pt.mean_mse <= result.cv_curve[*best].mean_mse + 1e-12) best = l;
  }
  if (!best) {
    throw Error(ErrorCode::kNotConverged, "coordinate descent failed for every lambda and fold");
  }
  result.best_index = *best;
  result.best_lambda = grid[*best];

  // Refit on all observations along the path down to the selected lambda.
  const CdProblem full(std::move(x), instance.y());
  Vector b = Vector::Zero(p);
  for (std::size_t l = 0; l <= *best; ++l) b = solve_cd(full, grid[l], b, options.solver).beta;
  result.final_beta = b.cwiseProduct(scale);
  return result;
}

double equivalent_radius(const Vector& beta_hat) { return beta_hat.lpNorm<1>(); }

}  // namespace hedgefw
