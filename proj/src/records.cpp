#include "hedgefw/records.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "hedgefw/text_format.hpp"

namespace hedgefw {
namespace {

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else if (c == '\n' || c == '\r') out += ' ';
    else out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

double parse_metric(const std::string& s, const char* what) {
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  return parse_double(s, what);
}

}  // namespace

std::string format_record(const ExperimentRecord& r) {
  std::ostringstream out;
  out << r.trial << ',' << method_name(r.method) << ',' << format_g17(r.pred_error) << ','
      << format_g17(r.resid_error) << ',' << format_g17(r.est_error) << ','
      << format_g17(r.support_f1) << ',' << format_g17(r.wall_time_s) << ',' << r.seed << ','
      << quote_csv(r.error);
  return out.str();
}

std::vector<ExperimentRecord> read_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kParse, "records file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordsHeader) {
    throw Error(ErrorCode::kParse, "unexpected records header '" + line + "'");
  }
  std::vector<ExperimentRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 9) {
      throw Error(ErrorCode::kParse, "records line " + std::to_string(lineno) + ": expected 9 fields");
    }
    ExperimentRecord r;
    r.trial = static_cast<std::size_t>(parse_u64(f[0], "trial"));
    const auto m = parse_method(f[1]);
    if (!m) throw Error(ErrorCode::kParse, "unknown method '" + f[1] + "'");
    r.method = *m;
    r.pred_error = parse_metric(f[2], "pred_error");
    r.resid_error = parse_metric(f[3], "resid_error");
    r.est_error = parse_metric(f[4], "est_error");
    r.support_f1 = parse_metric(f[5], "support_f1");
    r.wall_time_s = parse_metric(f[6], "wall_time_s");
    r.seed = parse_u64(f[7], "seed");
    r.error = f[8];
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ExperimentRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open records file '" + path + "'");
  return read_records(in);
}

double quantile(std::vector<double> values, double q) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

MetricSummary summarize(const std::vector<double>& values) {
  MetricSummary s;
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) continue;
    sum += v;
    ++s.count;
  }
  if (s.count == 0) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.median = s.mean = s.q25 = s.q75 = nan;
    return s;
  }
  s.mean = sum / static_cast<double>(s.count);
  s.median = quantile(values, 0.5);
  s.q25 = quantile(values, 0.25);
  s.q75 = quantile(values, 0.75);
  return s;
}

std::vector<MethodSummary> summarize_records(const std::vector<ExperimentRecord>& records) {
  std::vector<MethodSummary> out;
  for (Method m : {Method::kHedgeFwAggregate, Method::kHedgeFwSelect, Method::kCvLasso}) {
    std::vector<double> pe, wt;
    MethodSummary s;
    s.method = m;
    for (const auto& r : records) {
      if (r.method != m) continue;
      if (!r.error.empty()) {
        ++s.failures;
        continue;
      }
      pe.push_back(r.pred_error);
      wt.push_back(r.wall_time_s);
      s.total_wall_time_s += r.wall_time_s;
    }
    s.pred_error = summarize(pe);
    s.wall_time_s = summarize(wt);
    out.push_back(s);
  }
  return out;
}

std::string format_summary(const std::vector<ExperimentRecord>& records,
                           const std::string& config_dump) {
  const auto summaries = summarize_records(records);
  std::ostringstream out;
  out << "# configuration\n" << config_dump << '\n';
  out << "# per-method statistics (failed trials excluded)\n";
  for (const auto& s : summaries) {
    out << "[" << method_name(s.method) << "]\n"
        << "count=" << s.pred_error.count << '\n'
        << "failures=" << s.failures << '\n'
        << "pred_error.median=" << format_g17(s.pred_error.median) << '\n'
        << "pred_error.mean=" << format_g17(s.pred_error.mean) << '\n'
        << "pred_error.q25=" << format_g17(s.pred_error.q25) << '\n'
        << "pred_error.q75=" << format_g17(s.pred_error.q75) << '\n'
        << "pred_error.iqr=" << format_g17(s.pred_error.iqr()) << '\n'
        << "wall_time_s.median=" << format_g17(s.wall_time_s.median) << '\n'
        << "wall_time_s.mean=" << format_g17(s.wall_time_s.mean) << '\n'
        << "wall_time_s.q25=" << format_g17(s.wall_time_s.q25) << '\n'
        << "wall_time_s.q75=" << format_g17(s.wall_time_s.q75) << '\n'
        << "wall_time_s.iqr=" << format_g17(s.wall_time_s.iqr()) << '\n'
        << "wall_time_s.total=" << format_g17(s.total_wall_time_s) << '\n';
  }
  // Aggregate and select come from one timed run, so either carries the hedge time.
  const double hedge_total = summaries[0].total_wall_time_s;
  const double cv_total = summaries[2].total_wall_time_s;
  out << "\n# comparison\n"
      << "time_ratio.hedge_fw_over_cv_lasso="
      << format_g17(cv_total > 0.0 ? hedge_total / cv_total
                                   : std::numeric_limits<double>::quiet_NaN())
      << '\n';
  for (int k = 0; k < 2; ++k) {
    const double ratio = summaries[k].pred_error.median / summaries[2].pred_error.median;
    out << "pred_error_median_ratio." << method_name(summaries[k].method)
        << "_over_cv_lasso=" << format_g17(ratio) << '\n';
  }
  return out.str();
}

}  // namespace hedgefw
