#pragma once

// records.csv and summary.txt.

#include <iosfwd>
#include <string>
#include <vector>

#include "hedgefw/core_model.hpp"

namespace hedgefw {

inline constexpr const char* kRecordsHeader =
    "trial,method,pred_error,resid_error,est_error,support_f1,wall_time_s,seed,error";

/// One CSV line (no trailing newline); floats use 17 significant digits.
std::string format_record(const ExperimentRecord& record);

std::vector<ExperimentRecord> read_records(std::istream& in);
std::vector<ExperimentRecord> load_records(const std::string& path);

struct MetricSummary {
  std::size_t count = 0;
  double median = 0.0;
  double mean = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double iqr() const { return q75 - q25; }
};

/// Linear-interpolation quantile of finite values; `values` need not be sorted.
double quantile(std::vector<double> values, double q);

MetricSummary summarize(const std::vector<double>& values);

struct MethodSummary {
  Method method = Method::kCvLasso;
  std::size_t failures = 0;
  MetricSummary pred_error;
  MetricSummary wall_time_s;
  double total_wall_time_s = 0.0;
};

std::vector<MethodSummary> summarize_records(const std::vector<ExperimentRecord>& records);

/// Human-readable report including the hedge/cv wall-time ratio.
std::string format_summary(const std::vector<ExperimentRecord>& records,
                           const std::string& config_dump);

}  // namespace hedgefw
