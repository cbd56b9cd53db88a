#include "hedgefw/hedgefw.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "hedgefw/config.hpp"
#include "hedgefw/datagen.hpp"
#include "hedgefw/experiment.hpp"
#include "hedgefw/instance_io.hpp"
#include "hedgefw/records.hpp"
#include "hedgefw/svg.hpp"

struct hfw_config {
  hedgefw::ConfigBuilder builder;
};

struct hfw_instance {
  hedgefw::InstanceFile file;
};

struct hfw_solution {
  hedgefw::SolveResult result;
};

namespace {

thread_local std::string g_last_error;

hfw_status to_status(hedgefw::ErrorCode code) {
  using hedgefw::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return HFW_ERR_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return HFW_ERR_DIMENSION_MISMATCH;
    case ErrorCode::kNonFinite: return HFW_ERR_NON_FINITE;
    case ErrorCode::kDegenerateDesign: return HFW_ERR_DEGENERATE_DESIGN;
    case ErrorCode::kParse: return HFW_ERR_PARSE;
    case ErrorCode::kIo: return HFW_ERR_IO;
    case ErrorCode::kNotConverged: return HFW_ERR_NOT_CONVERGED;
  }
  return HFW_ERR_INTERNAL;
}

template <class F>
hfw_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return HFW_OK;
  } catch (const hedgefw::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return HFW_ERR_INTERNAL;
}

void require(const void* ptr, const char* what) {
  if (!ptr) {
    throw hedgefw::Error(hedgefw::ErrorCode::kInvalidArgument, std::string(what) + " is null");
  }
}

const hedgefw::MethodEstimate& estimate_of(const hfw_solution* s, hfw_method m) {
  switch (m) {
    case HFW_METHOD_HEDGE_FW_AGGREGATE: return s->result.aggregate_estimate;
    case HFW_METHOD_HEDGE_FW_SELECT: return s->result.select_estimate;
    case HFW_METHOD_CV_LASSO: return s->result.cv_estimate;
  }
  throw hedgefw::Error(hedgefw::ErrorCode::kInvalidArgument, "unknown method");
}

}  // namespace

extern "C" {

const char* hfw_version(void) { return "1.0.0"; }

const char* hfw_last_error(void) { return g_last_error.c_str(); }

hfw_status hfw_config_create(hfw_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new hfw_config{};
  });
}

void hfw_config_destroy(hfw_config* config) { delete config; }

hfw_status hfw_config_load_file(hfw_config* config, const char* path) {
  return guarded([&] {
    require(config, "config");
    require(path, "path");
    config->builder.apply_file(path);
  });
}

size_t hfw_config_num_keys(void) { return hedgefw::ConfigBuilder::known_keys().size(); }

const char* hfw_config_key(size_t index) {
  const auto& keys = hedgefw::ConfigBuilder::known_keys();
  return index < keys.size() ? keys[index].c_str() : nullptr;
}

hfw_status hfw_config_set(hfw_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->builder.set(key, value);
  });
}

hfw_status hfw_config_dump(const hfw_config* config, char* buffer, size_t capacity,
                           size_t* needed) {
  hfw_status status = HFW_OK;
  const hfw_status parsed = guarded([&] {
    require(config, "config");
    const std::string text = hedgefw::dump_config(config->builder.build());
    if (needed) *needed = text.size() + 1;
    if (!buffer || capacity < text.size() + 1) {
      status = HFW_ERR_BUFFER_TOO_SMALL;
      g_last_error = "buffer too small for configuration dump";
      return;
    }
    std::memcpy(buffer, text.c_str(), text.size() + 1);
  });
  return parsed != HFW_OK ? parsed : status;
}

hfw_status hfw_run_experiment(const hfw_config* config, hfw_run_summary* summary) {
  return guarded([&] {
    require(config, "config");
    const hedgefw::ExperimentConfig cfg = config->builder.build();
    const hedgefw::ExperimentResult res = hedgefw::run_experiment(cfg);
    if (!summary) return;
    const auto methods = hedgefw::summarize_records(res.records);
    summary->trials = cfg.trials;
    summary->records = res.records.size();
    summary->failed_trials = res.failed_trials;
    summary->hedge_fw_total_time_s = methods[0].total_wall_time_s;
    summary->cv_lasso_total_time_s = methods[2].total_wall_time_s;
    summary->max_l1_excess = res.max_l1_excess;
    summary->max_hedge_relative_error = res.max_hedge_relative_error;
    summary->hedge_ordering_consistent = res.hedge_ordering_consistent ? 1 : 0;
  });
}

hfw_status hfw_instance_generate(const hfw_config* config, hfw_instance** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    const hedgefw::ExperimentConfig cfg = config->builder.build();
    hedgefw::SyntheticInstance data = hedgefw::gen_instance(cfg.spec);
    *out = new hfw_instance{
        hedgefw::InstanceFile{std::move(data.instance), std::move(data.truth), cfg.spec.seed}};
  });
}

hfw_status hfw_instance_read(const char* path, hfw_instance** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new hfw_instance{hedgefw::load_instance(path)};
  });
}

hfw_status hfw_instance_write(const hfw_instance* instance, const char* path) {
  return guarded([&] {
    require(instance, "instance");
    require(path, "path");
    hedgefw::save_instance(path, instance->file);
  });
}

hfw_status hfw_instance_shape(const hfw_instance* instance, size_t* n, size_t* p) {
  return guarded([&] {
    require(instance, "instance");
    if (n) *n = static_cast<size_t>(instance->file.instance.n());
    if (p) *p = static_cast<size_t>(instance->file.instance.p());
  });
}

void hfw_instance_destroy(hfw_instance* instance) { delete instance; }

hfw_status hfw_solve(const hfw_instance* instance, const hfw_config* config, hfw_solution** out) {
  return guarded([&] {
    require(instance, "instance");
    require(config, "config");
    require(out, "out");
    // n and p come from the instance; fill them in when the config lacks them.
    hedgefw::ConfigBuilder builder = config->builder;
    builder.set("n", std::to_string(instance->file.instance.n()));
    builder.set("p", std::to_string(instance->file.instance.p()));
    const hedgefw::ExperimentConfig cfg = builder.build();
    *out = new hfw_solution{hedgefw::solve_instance(instance->file, cfg)};
  });
}

void hfw_solution_destroy(hfw_solution* solution) { delete solution; }

hfw_status hfw_solution_estimate(const hfw_solution* solution, hfw_method method, double* beta,
                                 size_t length) {
  return guarded([&] {
    require(solution, "solution");
    require(beta, "beta");
    const auto& est = estimate_of(solution, method);
    if (length != static_cast<size_t>(est.beta.size())) {
      throw hedgefw::Error(hedgefw::ErrorCode::kDimensionMismatch,
                           "estimate has length " + std::to_string(est.beta.size()));
    }
    std::memcpy(beta, est.beta.data(), length * sizeof(double));
  });
}

hfw_status hfw_solution_metrics(const hfw_solution* solution, hfw_method method,
                                hfw_metrics* metrics) {
  return guarded([&] {
    require(solution, "solution");
    require(metrics, "metrics");
    const auto& est = estimate_of(solution, method);
    if (!est.metrics) {
      throw hedgefw::Error(hedgefw::ErrorCode::kInvalidArgument, "no ground truth available");
    }
    *metrics = hfw_metrics{est.metrics->pred_error, est.metrics->resid_error,
                           est.metrics->est_error, est.metrics->support_f1,
                           est.metrics->wall_time_s};
  });
}

size_t hfw_solution_num_experts(const hfw_solution* solution) {
  return solution ? solution->result.hedge.weights.size() : 0;
}

hfw_status hfw_solution_hedge(const hfw_solution* solution, double* radii, double* weights,
                              size_t length) {
  return guarded([&] {
    require(solution, "solution");
    const auto& h = solution->result.hedge;
    if (length != h.weights.size()) {
      throw hedgefw::Error(hedgefw::ErrorCode::kDimensionMismatch,
                           "hedge vector has length " + std::to_string(h.weights.size()));
    }
    if (radii) std::memcpy(radii, h.radii.data(), length * sizeof(double));
    if (weights) std::memcpy(weights, h.weights.data(), length * sizeof(double));
  });
}

hfw_status hfw_solution_selection(const hfw_solution* solution, size_t* expert, int* dirac) {
  return guarded([&] {
    require(solution, "solution");
    if (expert) *expert = solution->result.selection.expert;
    if (dirac) *dirac = solution->result.selection.dirac ? 1 : 0;
  });
}

double hfw_solution_best_lambda(const hfw_solution* solution) {
  return solution ? solution->result.cv.best_lambda : 0.0;
}

hfw_status hfw_plot(const char* records_csv, const char* out_dir) {
  return guarded([&] {
    require(records_csv, "records_csv");
    require(out_dir, "out_dir");
    hedgefw::emit_svg_histograms(hedgefw::load_records(records_csv), out_dir);
  });
}

}  // extern "C"
