#include "hedgefw/datagen.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace hedgefw {

void SyntheticSpec::check() const {
  if (n == 0 || p == 0) throw Error(ErrorCode::kInvalidArgument, "n and p must be positive");
  if (s0 > p) throw Error(ErrorCode::kInvalidArgument, "s0 exceeds p");
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be finite and nonnegative");
  }
  if (design.kind == DesignKind::kToeplitzCorrelated && !(design.rho >= 0.0 && design.rho < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "toeplitz rho must lie in [0, 1)");
  }
}

Vector gen_signal(std::size_t p, std::size_t s0, Rng& rng) {
  if (s0 > p) {
    throw Error(ErrorCode::kInvalidArgument,
                "s0=" + std::to_string(s0) + " exceeds p=" + std::to_string(p));
  }
  std::vector<std::size_t> idx(p);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  // Partial Fisher-Yates: the first s0 slots form a uniform s0-subset.
  for (std::size_t k = 0; k < s0; ++k) {
    std::swap(idx[k], idx[k + rng.below(p - k)]);
  }
  Vector beta = Vector::Zero(static_cast<Eigen::Index>(p));
  for (std::size_t k = 0; k < s0; ++k) {
    double v = 0.0;
    while (v == 0.0) v = rng.sign() * (1.0 + rng.normal());
    beta(static_cast<Eigen::Index>(idx[k])) = v;
  }
  return beta;
}

SyntheticInstance gen_instance(const SyntheticSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto p = static_cast<Eigen::Index>(spec.p);

  Vector beta = gen_signal(spec.p, spec.s0, rng);

  Matrix x(n, p);
  if (spec.design.kind == DesignKind::kGaussianIid) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < p; ++j) x(i, j) = rng.normal();
  } else {
    Eigen::MatrixXd cov(p, p);
    for (Eigen::Index j = 0; j < p; ++j)
      for (Eigen::Index k = 0; k < p; ++k)
        cov(j, k) = std::pow(spec.design.rho, static_cast<double>(std::abs(j - k)));
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::kInvalidArgument, "toeplitz covariance is not positive definite");
    }
    const Eigen::MatrixXd chol = llt.matrixL();
    Vector g(p);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < p; ++j) g(j) = rng.normal();
      x.row(i) = (chol * g).transpose();
    }
  }

  Vector y = x * beta;
  for (Eigen::Index i = 0; i < n; ++i) y(i) += spec.sigma * rng.normal();

  GroundTruth truth{std::move(beta), spec.s0, spec.sigma};
  return SyntheticInstance{RegressionInstance::validate(std::move(x), std::move(y)),
                           std::move(truth)};
}

}  // namespace hedgefw
