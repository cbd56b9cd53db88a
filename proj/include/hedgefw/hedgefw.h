/*
 * C interface to the hedgefw library.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns an hfw_status; on failure a description is
 * available from hfw_last_error() on the calling thread until the next call.
 */
#ifndef HEDGEFW_HEDGEFW_H
#define HEDGEFW_HEDGEFW_H

#include <stddef.h>
#include <stdint.h>

#if defined(HFW_BUILDING_LIBRARY)
#define HFW_API __attribute__((visibility("default")))
#else
#define HFW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hfw_status {
  HFW_OK = 0,
  HFW_ERR_INVALID_ARGUMENT = 1,
  HFW_ERR_DIMENSION_MISMATCH = 2,
  HFW_ERR_NON_FINITE = 3,
  HFW_ERR_DEGENERATE_DESIGN = 4,
  HFW_ERR_PARSE = 5,
  HFW_ERR_IO = 6,
  HFW_ERR_NOT_CONVERGED = 7,
  HFW_ERR_BUFFER_TOO_SMALL = 8,
  HFW_ERR_INTERNAL = 99
} hfw_status;

typedef enum hfw_method {
  HFW_METHOD_HEDGE_FW_AGGREGATE = 0,
  HFW_METHOD_HEDGE_FW_SELECT = 1,
  HFW_METHOD_CV_LASSO = 2
} hfw_method;

typedef struct hfw_config hfw_config;
typedef struct hfw_instance hfw_instance;
typedef struct hfw_solution hfw_solution;

typedef struct hfw_run_summary {
  size_t trials;
  size_t records;
  size_t failed_trials;
  double hedge_fw_total_time_s;
  double cv_lasso_total_time_s;
  double max_l1_excess;
  double max_hedge_relative_error;
  int hedge_ordering_consistent;
} hfw_run_summary;

typedef struct hfw_metrics {
  double pred_error;
  double resid_error;
  double est_error;
  double support_f1;
  double wall_time_s;
} hfw_metrics;

HFW_API const char* hfw_version(void);
HFW_API const char* hfw_last_error(void);

/* Configuration (key=value settings; unknown keys are rejected). */
HFW_API hfw_status hfw_config_create(hfw_config** out);
HFW_API void hfw_config_destroy(hfw_config* config);
HFW_API hfw_status hfw_config_load_file(hfw_config* config, const char* path);
/* Keys accepted by hfw_config_set, in dump order. */
HFW_API size_t hfw_config_num_keys(void);
HFW_API const char* hfw_config_key(size_t index);
HFW_API hfw_status hfw_config_set(hfw_config* config, const char* key, const char* value);
/* Resolved configuration as key=value text. Writes at most `capacity` bytes
 * including the terminator; `*needed` receives the full size. */
HFW_API hfw_status hfw_config_dump(const hfw_config* config, char* buffer, size_t capacity,
                                   size_t* needed);

/* Monte Carlo sweep into the configured output directory. */
HFW_API hfw_status hfw_run_experiment(const hfw_config* config, hfw_run_summary* summary);

/* Synthetic instances and the text instance format. */
HFW_API hfw_status hfw_instance_generate(const hfw_config* config, hfw_instance** out);
HFW_API hfw_status hfw_instance_read(const char* path, hfw_instance** out);
HFW_API hfw_status hfw_instance_write(const hfw_instance* instance, const char* path);
HFW_API hfw_status hfw_instance_shape(const hfw_instance* instance, size_t* n, size_t* p);
HFW_API void hfw_instance_destroy(hfw_instance* instance);

/* Both methods on one instance. */
HFW_API hfw_status hfw_solve(const hfw_instance* instance, const hfw_config* config,
                             hfw_solution** out);
HFW_API void hfw_solution_destroy(hfw_solution* solution);
HFW_API hfw_status hfw_solution_estimate(const hfw_solution* solution, hfw_method method,
                                         double* beta, size_t length);
HFW_API hfw_status hfw_solution_metrics(const hfw_solution* solution, hfw_method method,
                                        hfw_metrics* metrics);
HFW_API size_t hfw_solution_num_experts(const hfw_solution* solution);
HFW_API hfw_status hfw_solution_hedge(const hfw_solution* solution, double* radii,
                                      double* weights, size_t length);
HFW_API hfw_status hfw_solution_selection(const hfw_solution* solution, size_t* expert,
                                          int* dirac);
HFW_API double hfw_solution_best_lambda(const hfw_solution* solution);

/* records.csv -> pred_error.svg and wall_time_s.svg in out_dir. */
HFW_API hfw_status hfw_plot(const char* records_csv, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* HEDGEFW_HEDGEFW_H */
