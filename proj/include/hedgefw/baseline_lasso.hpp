#pragma once

// Batch LASSO baseline: cyclic coordinate descent on
//   (1/2) ||y - X b||^2 + lambda ||b||_1
// with a geometric lambda path and k-fold cross-validation.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hedgefw/core_model.hpp"

namespace hedgefw {

/// Strictly decreasing positive penalties.
class LambdaGrid {
 public:
  explicit LambdaGrid(std::vector<double> lambdas);

  std::span<const double> lambdas() const noexcept { return lambdas_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  double operator[](std::size_t i) const { return lambdas_[i]; }

 private:
  std::vector<double> lambdas_;
};

double soft_threshold(double v, double threshold);

struct LassoOptions {
  double tol = 1e-7;  // stop when no coordinate moves more than this in a sweep
  std::size_t max_iter = 10000;  // sweeps
  bool record_objective = false;
};

struct LassoFit {
  Vector beta;
  bool converged = false;
  std::size_t sweeps = 0;
  double objective = 0.0;
  /// Objective after each sweep, when requested.
  std::vector<double> objective_history;
};

double lasso_objective(const RegressionInstance& instance, const Vector& b, double lambda);

/// Coordinate descent. A column of zeros keeps its coefficient at 0. When
/// max_iter is exhausted the last iterate is returned with converged=false.
LassoFit lasso_cd(const RegressionInstance& instance, double lambda,
                  const std::optional<Vector>& warm_start = std::nullopt,
                  const LassoOptions& options = {});

/// Geometric path from ||X^T y||_inf down to 1e-3 of it.
LambdaGrid lambda_path(const RegressionInstance& instance, std::size_t size);

/// Seeded permutation of 0..n-1 cut into k folds whose sizes differ by at most one.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k, std::uint64_t seed);

struct CvPoint {
  double lambda = 0.0;
  double mean_mse = 0.0;
  double std_mse = 0.0;
  std::size_t folds_used = 0;
};

struct CvResult {
  double best_lambda = 0.0;
  std::size_t best_index = 0;
  std::vector<CvPoint> cv_curve;
  Vector final_beta;
  /// Fold fits dropped because the solver did not converge.
  std::size_t skipped_fits = 0;
};

struct CvOptions {
  LassoOptions solver;
  /// Scale columns to unit variance before fitting; coefficients are mapped back.
  bool standardize = false;
};

CvResult cv_lasso(const RegressionInstance& instance, const LambdaGrid& grid, std::size_t k,
                  std::uint64_t seed, const CvOptions& options = {});

/// ||b||_1: the constraint radius sharing the penalized solution b.
double equivalent_radius(const Vector& beta_hat);

}  // namespace hedgefw
