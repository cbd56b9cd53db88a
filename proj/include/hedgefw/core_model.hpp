#pragma once

// Shared domain types. Everything here is immutable after construction and
// validated on the way in; algorithms live in their own modules.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hedgefw/error.hpp"

namespace hedgefw {

/// Dense design storage, row-major so one observation is one contiguous row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Observable data: design X (n x p) and response y (n).
class RegressionInstance {
 public:
  /// Validates and takes ownership. Throws on empty input, dimension
  /// mismatch, or any non-finite entry (the position is reported).
  static RegressionInstance validate(Matrix x, Vector y);

  const Matrix& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }
  Eigen::Index n() const noexcept { return x_.rows(); }
  Eigen::Index p() const noexcept { return x_.cols(); }

 private:
  RegressionInstance(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {}
  Matrix x_;
  Vector y_;
};

/// True signal and noise level of a synthetic instance.
struct GroundTruth {
  Vector beta;
  std::size_t s0 = 0;
  double sigma = 0.0;

  /// Checks that the support size of beta equals s0 and sigma >= 0.
  void check() const;
};

/// Strictly increasing positive l1-ball radii; each radius is one expert.
class CandidateGrid {
 public:
  explicit CandidateGrid(std::vector<double> radii);

  std::span<const double> radii() const noexcept { return radii_; }
  std::size_t size() const noexcept { return radii_.size(); }
  double operator[](std::size_t i) const { return radii_[i]; }

 private:
  std::vector<double> radii_;
};

struct HedgeConfig {
  /// Learning rate; when empty, sqrt(8 ln G / n) is used once n is known.
  std::optional<double> eta;
  double dirac_tolerance = 0.01;
  /// Optional cap applied to each squared error before it reaches Hedge.
  std::optional<double> loss_cap;

  void check() const;
  double resolve_eta(std::size_t num_experts, std::size_t horizon) const;
};

struct FwConfig {
  /// K in the step schedule K / (t + K - 1).
  double k_step = 2.0;

  void check() const;
};

enum class Method { kHedgeFwAggregate, kHedgeFwSelect, kCvLasso };

std::string_view method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;

/// One (trial, method) outcome of a Monte Carlo sweep.
struct ExperimentRecord {
  std::size_t trial = 0;
  Method method = Method::kCvLasso;
  double pred_error = 0.0;
  double resid_error = 0.0;
  double est_error = 0.0;
  double support_f1 = 0.0;
  double wall_time_s = 0.0;
  std::uint64_t seed = 0;
  std::string config_digest;
  /// Empty on success; otherwise the failure message for this trial.
  std::string error;
};

}  // namespace hedgefw
