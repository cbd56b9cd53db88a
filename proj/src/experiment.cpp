#include "hedgefw/experiment.hpp"

#include <atomic>
#include <condition_variable>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "hedgefw/datagen.hpp"
#include "hedgefw/records.hpp"
#include "hedgefw/rng.hpp"
#include "hedgefw/svg.hpp"

namespace hedgefw {
namespace {

CvOptions cv_options(const ExperimentConfig& config) {
  CvOptions opt;
  opt.solver.tol = config.cd_tol;
  opt.solver.max_iter = config.cd_max_iter;
  opt.standardize = config.standardize;
  return opt;
}

struct HedgeRun {
  HedgeFwOutput output;
  Vector aggregate;
  Selection selection;
};

HedgeRun run_hedge_method(const RegressionInstance& instance, const ExperimentConfig& config) {
  const CandidateGrid grid = default_grid(instance, config.grid_size);
  HedgeRun run{run_hedge_fw(instance, grid, config.hedge, config.fw), {}, {}};
  run.aggregate = aggregate_estimator(run.output);
  run.selection = select_estimator(run.output, config.hedge.dirac_tolerance);
  return run;
}

CvResult run_cv_method(const RegressionInstance& instance, const ExperimentConfig& config,
                       std::uint64_t fold_seed) {
  return cv_lasso(instance, lambda_path(instance, config.grid_size), config.cv_folds, fold_seed,
                  cv_options(config));
}

void fill(ExperimentRecord& r, const TrialMetrics& m) {
  r.pred_error = m.pred_error;
  r.resid_error = m.resid_error;
  r.est_error = m.est_error;
  r.support_f1 = m.support_f1;
  r.wall_time_s = m.wall_time_s;
}

}  // namespace

TrialOutcome run_trial(const ExperimentConfig& config, std::size_t trial,
                       const std::string& digest) {
  TrialOutcome out;
  const std::uint64_t seed = Rng::child_seed(config.spec.seed, trial);
  const Method methods[3] = {Method::kHedgeFwAggregate, Method::kHedgeFwSelect, Method::kCvLasso};
  for (int k = 0; k < 3; ++k) {
    ExperimentRecord& r = out.records[static_cast<std::size_t>(k)];
    r.trial = trial;
    r.method = methods[k];
    r.seed = seed;
    r.config_digest = digest;
  }

  try {
    SyntheticSpec spec = config.spec;
    spec.seed = seed;
    const SyntheticInstance data = gen_instance(spec);
    const RegressionInstance& inst = data.instance;

    // One timed hedge run feeds both the aggregate and the selected estimator.
    auto hedge = time_block([&] { return run_hedge_method(inst, config); });
    fill(out.records[0], evaluate(inst, data.truth, hedge.value.aggregate, hedge.wall_time_s));
    fill(out.records[1],
         evaluate(inst, data.truth, hedge.value.selection.beta, hedge.wall_time_s));
    out.max_l1_excess = hedge.value.output.max_l1_excess;
    out.consistency = check_hedge_consistency(hedge.value.output);

    auto cv = time_block([&] { return run_cv_method(inst, config, Rng::child_seed(seed, 0)); });
    fill(out.records[2], evaluate(inst, data.truth, cv.value.final_beta, cv.wall_time_s));
  } catch (const std::exception& e) {
    out.failed = true;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (auto& r : out.records) {
      r.pred_error = r.resid_error = r.est_error = r.support_f1 = r.wall_time_s = nan;
      r.error = e.what();
    }
  }
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.check();
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create output directory '" + config.output_dir +
                                    "': " + ec.message());
  }

  ExperimentResult result;
  result.records_path = (fs::path(config.output_dir) / "records.csv").string();
  result.summary_path = (fs::path(config.output_dir) / "summary.txt").string();
  std::ofstream csv(result.records_path, std::ios::trunc);
  if (!csv) throw Error(ErrorCode::kIo, "cannot write '" + result.records_path + "'");
  csv << kRecordsHeader << '\n' << std::flush;

  const std::string digest = config_digest(config);
  const std::size_t trials = config.trials;
  std::vector<std::optional<TrialOutcome>> slots(trials);
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t t = next++; t < trials; t = next++) {
      TrialOutcome outcome = run_trial(config, t, digest);
      {
        const std::lock_guard<std::mutex> lock(mu);
        slots[t] = std::move(outcome);
      }
      ready.notify_one();
    }
  };

  std::vector<std::jthread> pool;
  const std::size_t workers = std::min(config.threads, trials);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);

  // Single writer: emit rows strictly in trial order as prefixes complete.
  for (std::size_t t = 0; t < trials; ++t) {
    TrialOutcome outcome;
    {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return slots[t].has_value(); });
      outcome = std::move(*slots[t]);
      slots[t].reset();
    }
    for (const auto& r : outcome.records) {
      csv << format_record(r) << '\n' << std::flush;
      result.records.push_back(r);
    }
    if (outcome.failed) {
      ++result.failed_trials;
      continue;
    }
    result.max_l1_excess = std::max(result.max_l1_excess, outcome.max_l1_excess);
    result.max_hedge_relative_error =
        std::max(result.max_hedge_relative_error, outcome.consistency.max_relative_error);
    result.hedge_ordering_consistent =
        result.hedge_ordering_consistent && outcome.consistency.ordering_consistent;
  }
  pool.clear();
  if (!csv) throw Error(ErrorCode::kIo, "failed writing '" + result.records_path + "'");

  std::ofstream summary(result.summary_path, std::ios::trunc);
  if (!summary) throw Error(ErrorCode::kIo, "cannot write '" + result.summary_path + "'");
  summary << format_summary(result.records, dump_config(config));

  if (config.emit_svg) result.svg_paths = emit_svg_histograms(result.records, config.output_dir);
  return result;
}

SolveResult solve_instance(const InstanceFile& file, const ExperimentConfig& config) {
  const RegressionInstance& inst = file.instance;
  SolveResult out;
  auto hedge = time_block([&] { return run_hedge_method(inst, config); });
  auto cv = time_block([&] { return run_cv_method(inst, config, Rng::child_seed(file.seed, 0)); });

  out.hedge = std::move(hedge.value.output);
  out.selection = hedge.value.selection;
  out.cv = std::move(cv.value);
  out.aggregate_estimate.beta = std::move(hedge.value.aggregate);
  out.select_estimate.beta = out.selection.beta;
  out.cv_estimate.beta = out.cv.final_beta;

  if (file.truth.beta.size() == inst.p()) {
    out.aggregate_estimate.metrics =
        evaluate(inst, file.truth, out.aggregate_estimate.beta, hedge.wall_time_s);
    out.select_estimate.metrics =
        evaluate(inst, file.truth, out.select_estimate.beta, hedge.wall_time_s);
    out.cv_estimate.metrics = evaluate(inst, file.truth, out.cv_estimate.beta, cv.wall_time_s);
  }
  return out;
}

}  // namespace hedgefw
