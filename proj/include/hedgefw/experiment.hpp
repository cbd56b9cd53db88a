#pragma once

// Monte Carlo comparison of HedgeStochFW against cross-validated LASSO.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hedgefw/baseline_lasso.hpp"
#include "hedgefw/config.hpp"
#include "hedgefw/hedge_fw.hpp"
#include "hedgefw/instance_io.hpp"
#include "hedgefw/metrics.hpp"

namespace hedgefw {

struct TrialOutcome {
  /// hedge_fw_aggregate, hedge_fw_select, cv_lasso, in that order.
  std::array<ExperimentRecord, 3> records;
  double max_l1_excess = 0.0;
  HedgeConsistency consistency;
  bool failed = false;
};

/// Trial `trial` of the sweep; never throws for numerical failures (they
/// land in the records' error column).
TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial,
                       const std::string& digest);

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::size_t failed_trials = 0;
  double max_l1_excess = 0.0;
  double max_hedge_relative_error = 0.0;
  bool hedge_ordering_consistent = true;
  std::string records_path;
  std::string summary_path;
  std::vector<std::string> svg_paths;
};

/// Runs every trial on `config.threads` workers and writes records.csv (row
/// by row, in trial order), summary.txt and, optionally, the SVGs.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct MethodEstimate {
  Vector beta;
  std::optional<TrialMetrics> metrics;  // present when the truth is known
};

struct SolveResult {
  HedgeFwOutput hedge;
  Selection selection;
  CvResult cv;
  MethodEstimate aggregate_estimate;
  MethodEstimate select_estimate;
  MethodEstimate cv_estimate;
};

/// Both methods on one instance, with the settings of `config`.
SolveResult solve_instance(const InstanceFile& file, const ExperimentConfig& config);

}  // namespace hedgefw
