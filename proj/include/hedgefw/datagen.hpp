#pragma once

// Seeded synthetic sparse-regression instances: y = X beta + sigma g.

#include <cstddef>
#include <cstdint>

#include "hedgefw/core_model.hpp"
#include "hedgefw/rng.hpp"

namespace hedgefw {

enum class DesignKind { kGaussianIid, kToeplitzCorrelated };

struct Design {
  DesignKind kind = DesignKind::kGaussianIid;
  double rho = 0.0;  // correlation decay, toeplitz only
};

struct SyntheticSpec {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t s0 = 0;
  double sigma = 0.0;
  Design design;
  std::uint64_t seed = 0;

  void check() const;
};

struct SyntheticInstance {
  RegressionInstance instance;
  GroundTruth truth;
};

/// s0 positions uniformly without replacement, values sign * (1 + G).
Vector gen_signal(std::size_t p, std::size_t s0, Rng& rng);

/// Draws beta, then X row by row, then the noise, all from Rng(spec.seed).
SyntheticInstance gen_instance(const SyntheticSpec& spec);

}  // namespace hedgefw
