#pragma once

// Experiment configuration: `key=value` lines with `#` comments. Command-line
// overrides are applied on top of file values through the same key table.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hedgefw/core_model.hpp"
#include "hedgefw/datagen.hpp"

namespace hedgefw {

struct ExperimentConfig {
  SyntheticSpec spec;  // spec.seed is the master seed
  std::size_t trials = 50;
  std::size_t grid_size = 20;
  HedgeConfig hedge;
  FwConfig fw;
  std::size_t cv_folds = 5;
  double cd_tol = 1e-7;
  std::size_t cd_max_iter = 10000;
  bool standardize = false;
  std::string output_dir = "results";
  bool emit_svg = true;
  std::size_t threads = 1;

  void check() const;
};

inline constexpr std::size_t kPaperScaleTrials = 1000;

/// Accumulates raw key=value settings; later assignments win.
class ConfigBuilder {
 public:
  /// Every key understood by set(), in dump order.
  static const std::vector<std::string>& known_keys();

  void set(std::string_view key, std::string_view value);
  void apply_text(std::string_view text, std::string_view origin = "<text>");
  void apply_file(const std::string& path);

  /// Resolves defaults, checks types and required keys (n, p).
  ExperimentConfig build() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

/// Fully resolved key=value dump; feeding it back to ConfigBuilder rebuilds
/// an identical configuration.
std::string dump_config(const ExperimentConfig& config);

/// Hex FNV-1a digest of dump_config(config).
std::string config_digest(const ExperimentConfig& config);

}  // namespace hedgefw
