#include "hedgefw/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hedgefw {

RegressionInstance RegressionInstance::validate(Matrix x, Vector y) {
  if (x.rows() == 0 || x.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "design matrix is empty");
  }
  if (x.rows() != y.size()) {
    std::ostringstream msg;
    msg << "dimension mismatch: x has " << x.rows() << " rows but y has " << y.size()
        << " entries";
    throw Error(ErrorCode::kDimensionMismatch, msg.str());
  }
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (!std::isfinite(x(i, j))) {
        std::ostringstream msg;
        msg << "non-finite entry in x at (" << i << "," << j << ")";
        throw Error(ErrorCode::kNonFinite, msg.str());
      }
    }
    if (!std::isfinite(y(i))) {
      std::ostringstream msg;
      msg << "non-finite entry in y at " << i;
      throw Error(ErrorCode::kNonFinite, msg.str());
    }
  }
  return RegressionInstance(std::move(x), std::move(y));
}

void GroundTruth::check() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be finite and nonnegative");
  }
  if (s0 > static_cast<std::size_t>(beta.size())) {
    throw Error(ErrorCode::kInvalidArgument, "s0 exceeds p");
  }
  const auto nnz = static_cast<std::size_t>((beta.array() != 0.0).count());
  if (nnz != s0) {
    std::ostringstream msg;
    msg << "ground truth has " << nnz << " nonzeros, expected s0=" << s0;
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

CandidateGrid::CandidateGrid(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "candidate grid is empty");
  }
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!std::isfinite(radii_[i]) || !(radii_[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate radius " + std::to_string(i) + " is not a positive finite value");
    }
    if (i > 0 && !(radii_[i] > radii_[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "candidate radii must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

void HedgeConfig::check() const {
  if (eta && !(std::isfinite(*eta) && *eta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "eta must be positive");
  }
  if (!(dirac_tolerance > 0.0 && dirac_tolerance < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "dirac_tolerance must lie in (0, 0.5)");
  }
  if (loss_cap && !(*loss_cap > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "loss_cap must be positive");
  }
}

double HedgeConfig::resolve_eta(std::size_t num_experts, std::size_t horizon) const {
  if (eta) return *eta;
  if (horizon == 0) {
    throw Error(ErrorCode::kInvalidArgument, "cannot derive eta without a horizon");
  }
  // A single expert makes the rate irrelevant; keep it positive.
  const double g = static_cast<double>(std::max<std::size_t>(num_experts, 2));
  return std::sqrt(8.0 * std::log(g) / static_cast<double>(horizon));
}

void FwConfig::check() const {
  if (!(std::isfinite(k_step) && k_step >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "k_step must be >= 1");
  }
}

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::kHedgeFwAggregate: return "hedge_fw_aggregate";
    case Method::kHedgeFwSelect: return "hedge_fw_select";
    case Method::kCvLasso: return "cv_lasso";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : {Method::kHedgeFwAggregate, Method::kHedgeFwSelect, Method::kCvLasso}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

}  // namespace hedgefw
