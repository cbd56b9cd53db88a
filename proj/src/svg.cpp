#include "hedgefw/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hedgefw/text_format.hpp"

namespace hedgefw {
namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 190, kTop = 40, kBottom = 60;
constexpr std::array<Method, 3> kMethods = {Method::kHedgeFwAggregate, Method::kHedgeFwSelect,
                                            Method::kCvLasso};
constexpr std::array<const char*, 3> kColors = {"#1f77b4", "#2ca02c", "#d62728"};

double metric_of(const ExperimentRecord& r, PlotMetric m) {
  return m == PlotMetric::kPredError ? r.pred_error : r.wall_time_s;
}

const char* metric_label(PlotMetric m) {
  return m == PlotMetric::kPredError ? "prediction error (1/sqrt(n)) ||X(b - beta)||"
                                     : "wall time (s)";
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

std::string render_histogram_svg(const std::vector<ExperimentRecord>& records, PlotMetric metric) {
  if (records.empty()) throw Error(ErrorCode::kInvalidArgument, "no records to plot");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& r : records) {
    const double v = metric_of(r, metric);
    if (!r.error.empty() || !std::isfinite(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  const double span = hi - lo;

  std::array<std::array<int, kHistogramBins>, 3> counts{};
  std::array<bool, 3> present{};
  for (const auto& r : records) {
    const auto k = static_cast<std::size_t>(std::find(kMethods.begin(), kMethods.end(), r.method) -
                                            kMethods.begin());
    present[k] = true;
    const double v = metric_of(r, metric);
    if (!r.error.empty() || !std::isfinite(v)) continue;
    int bin = 0;
    if (span > 0.0) {
      bin = std::min(kHistogramBins - 1, static_cast<int>((v - lo) / span * kHistogramBins));
    }
    ++counts[k][static_cast<std::size_t>(bin)];
  }
  int max_count = 1;
  for (const auto& c : counts) max_count = std::max(max_count, *std::max_element(c.begin(), c.end()));

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double bin_w = plot_w / kHistogramBins;
  auto ypos = [&](double c) { return kTop + plot_h * (1.0 - c / max_count); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n"
      << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">Histogram of " << metric_label(metric)
      << "</text>\n";

  // Axes with five ticks each.
  svg << "<g class=\"axes\" stroke=\"black\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\"/>\n"
      << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double fx = t / 4.0;
    const double x = kLeft + fx * plot_w;
    const double xv = span > 0.0 ? lo + fx * span : lo;
    svg << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x << "\" y2=\""
        << kTop + plot_h + 5 << "\"/>\n"
        << "<text stroke=\"none\" x=\"" << x << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    const double yc = fx * max_count;
    svg << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << ypos(yc) << "\" x2=\"" << kLeft
        << "\" y2=\"" << ypos(yc) << "\"/>\n"
        << "<text stroke=\"none\" x=\"" << kLeft - 8 << "\" y=\"" << ypos(yc) + 4
        << "\" text-anchor=\"end\">" << num(yc) << "</text>\n";
  }
  svg << "<text stroke=\"none\" x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"13\">" << metric_label(metric) << "</text>\n"
      << "<text stroke=\"none\" x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">trials</text>\n"
      << "</g>\n";

  int legend_row = 0;
  for (std::size_t k = 0; k < kMethods.size(); ++k) {
    if (!present[k]) continue;
    svg << "<g class=\"histogram\" id=\"hist-" << method_name(kMethods[k]) << "\" fill=\""
        << kColors[k] << "\" fill-opacity=\"0.45\" stroke=\"" << kColors[k] << "\">\n";
    for (int b = 0; b < kHistogramBins; ++b) {
      const int c = counts[k][static_cast<std::size_t>(b)];
      if (c == 0) continue;
      svg << "<rect class=\"bin\" data-bin=\"" << b << "\" data-count=\"" << c << "\" x=\""
          << kLeft + b * bin_w << "\" y=\"" << ypos(c) << "\" width=\"" << bin_w
          << "\" height=\"" << plot_h * c / max_count << "\"/>\n";
    }
    svg << "</g>\n";
    const double ly = kTop + 10 + 22 * legend_row++;
    svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">"
        << "<rect x=\"" << kWidth - kRight + 15 << "\" y=\"" << ly << "\" width=\"14\" height=\"14\" "
        << "fill=\"" << kColors[k] << "\" fill-opacity=\"0.45\" stroke=\"" << kColors[k] << "\"/>"
        << "<text x=\"" << kWidth - kRight + 35 << "\" y=\"" << ly + 11 << "\">"
        << method_name(kMethods[k]) << "</text></g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<std::string> emit_svg_histograms(const std::vector<ExperimentRecord>& records,
                                             const std::string& dir) {
  std::vector<std::string> paths;
  std::filesystem::create_directories(dir);
  for (auto [metric, name] : {std::pair{PlotMetric::kPredError, "pred_error.svg"},
                              std::pair{PlotMetric::kWallTime, "wall_time_s.svg"}}) {
    const std::string body = render_histogram_svg(records, metric);
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
    out << body;
    paths.push_back(path);
  }
  return paths;
}

}  // namespace hedgefw
