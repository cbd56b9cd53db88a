#pragma once

// Portable seeded randomness.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. The standard distributions are implementation-defined, so the
// uniform, normal and bounded-integer transforms are written out here to
// keep experiment tables identical across toolchains.
//
// Stream splitting: child(master, index) seeds a fresh engine with
// splitmix64(master ^ splitmix64(index + 1)). Each Monte Carlo trial owns
// the child stream of its trial index; nothing is shared between trials.

#include <cstdint>
#include <random>

namespace hedgefw {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Independent stream derived from (master seed, index).
  static Rng child(std::uint64_t master, std::uint64_t index);
  static std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal (Marsaglia polar method, spare value cached).
  double normal();
  /// +1 or -1 with equal probability.
  double sign();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace hedgefw
