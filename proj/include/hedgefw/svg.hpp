#pragma once

// Self-contained SVG 1.1 histograms of per-method metrics.

#include <string>
#include <vector>

#include "hedgefw/core_model.hpp"

namespace hedgefw {

enum class PlotMetric { kPredError, kWallTime };

inline constexpr int kHistogramBins = 30;

/// Overlaid per-method histograms with shared axes over the pooled range.
/// Records with an error or a non-finite value are skipped. Throws when
/// `records` is empty.
std::string render_histogram_svg(const std::vector<ExperimentRecord>& records, PlotMetric metric);

/// Writes pred_error.svg and wall_time_s.svg into `dir`; returns their paths.
std::vector<std::string> emit_svg_histograms(const std::vector<ExperimentRecord>& records,
                                             const std::string& dir);

}  // namespace hedgefw
