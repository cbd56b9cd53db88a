/* Exercises the public C interface from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "hedgefw/hedgefw.h"

static int failures = 0;

#define CHECK(cond)                                                  \
  do {                                                               \
    if (!(cond)) {                                                   \
      fprintf(stderr, "%s:%d: CHECK(%s) failed (last error: %s)\n", \
              __FILE__, __LINE__, #cond, hfw_last_error());          \
      ++failures;                                                    \
    }                                                                \
  } while (0)

static void test_config(void) {
  hfw_config* cfg = NULL;
  CHECK(hfw_config_create(&cfg) == HFW_OK);
  CHECK(hfw_config_num_keys() == 20);
  CHECK(strcmp(hfw_config_key(0), "n") == 0);
  CHECK(hfw_config_key(1000) == NULL);
  CHECK(hfw_config_set(cfg, "trails", "10") == HFW_ERR_PARSE);
  CHECK(strstr(hfw_last_error(), "trails") != NULL);

  size_t needed = 0;
  /* n and p are still missing. */
  CHECK(hfw_config_dump(cfg, NULL, 0, &needed) == HFW_ERR_PARSE);
  CHECK(hfw_config_set(cfg, "n", "30") == HFW_OK);
  CHECK(hfw_config_set(cfg, "p", "20") == HFW_OK);
  CHECK(hfw_config_dump(cfg, NULL, 0, &needed) == HFW_ERR_BUFFER_TOO_SMALL);
  CHECK(needed > 1);
  char* text = malloc(needed);
  CHECK(hfw_config_dump(cfg, text, needed, &needed) == HFW_OK);
  CHECK(strstr(text, "n=30\n") != NULL);
  free(text);
  hfw_config_destroy(cfg);
  hfw_config_destroy(NULL);
}

static void test_solve(void) {
  hfw_config* cfg = NULL;
  CHECK(hfw_config_create(&cfg) == HFW_OK);
  hfw_config_set(cfg, "n", "40");
  hfw_config_set(cfg, "p", "30");
  hfw_config_set(cfg, "s0", "3");
  hfw_config_set(cfg, "sigma", "0.05");
  hfw_config_set(cfg, "grid_size", "6");

  hfw_instance* inst = NULL;
  CHECK(hfw_instance_generate(cfg, &inst) == HFW_OK);
  size_t n = 0, p = 0;
  CHECK(hfw_instance_shape(inst, &n, &p) == HFW_OK);
  CHECK(n == 40 && p == 30);

  const char* path = "test_c_api_instance.txt";
  CHECK(hfw_instance_write(inst, path) == HFW_OK);
  hfw_instance* back = NULL;
  CHECK(hfw_instance_read(path, &back) == HFW_OK);
  CHECK(hfw_instance_read("/nonexistent/instance.txt", &back) == HFW_ERR_IO);

  hfw_solution* a = NULL;
  hfw_solution* b = NULL;
  CHECK(hfw_solve(inst, cfg, &a) == HFW_OK);
  CHECK(hfw_solve(back, cfg, &b) == HFW_OK);
  CHECK(hfw_solution_num_experts(a) == 6);

  double beta_a[30], beta_b[30];
  for (int m = HFW_METHOD_HEDGE_FW_AGGREGATE; m <= HFW_METHOD_CV_LASSO; ++m) {
    CHECK(hfw_solution_estimate(a, (hfw_method)m, beta_a, 30) == HFW_OK);
    CHECK(hfw_solution_estimate(b, (hfw_method)m, beta_b, 30) == HFW_OK);
    CHECK(memcmp(beta_a, beta_b, sizeof beta_a) == 0);
    hfw_metrics met;
    CHECK(hfw_solution_metrics(a, (hfw_method)m, &met) == HFW_OK);
    CHECK(met.pred_error >= 0.0 && isfinite(met.pred_error));
  }
  CHECK(hfw_solution_estimate(a, HFW_METHOD_CV_LASSO, beta_a, 29) == HFW_ERR_DIMENSION_MISMATCH);

  double radii[6], weights[6];
  CHECK(hfw_solution_hedge(a, radii, weights, 6) == HFW_OK);
  double total = 0.0;
  for (int r = 0; r < 6; ++r) total += weights[r];
  CHECK(fabs(total - 1.0) < 1e-12);
  CHECK(radii[0] < radii[5]);
  size_t expert = 99;
  int dirac = -1;
  CHECK(hfw_solution_selection(a, &expert, &dirac) == HFW_OK);
  CHECK(expert < 6 && (dirac == 0 || dirac == 1));
  CHECK(hfw_solution_best_lambda(a) > 0.0);

  hfw_solution_destroy(a);
  hfw_solution_destroy(b);
  hfw_instance_destroy(inst);
  hfw_instance_destroy(back);
  hfw_config_destroy(cfg);
  remove(path);
}

static void test_run(void) {
  hfw_config* cfg = NULL;
  CHECK(hfw_config_create(&cfg) == HFW_OK);
  hfw_config_set(cfg, "n", "40");
  hfw_config_set(cfg, "p", "30");
  hfw_config_set(cfg, "trials", "2");
  hfw_config_set(cfg, "grid_size", "5");
  hfw_config_set(cfg, "output_dir", "test_c_api_run");
  hfw_run_summary summary;
  CHECK(hfw_run_experiment(cfg, &summary) == HFW_OK);
  CHECK(summary.trials == 2);
  CHECK(summary.records == 6);
  CHECK(summary.failed_trials == 0);
  CHECK(summary.max_l1_excess <= 1e-9);
  CHECK(summary.hedge_ordering_consistent == 1);
  CHECK(hfw_plot("test_c_api_run/records.csv", "test_c_api_run/plots") == HFW_OK);
  CHECK(hfw_plot("test_c_api_run/missing.csv", "test_c_api_run/plots") == HFW_ERR_IO);
  hfw_config_destroy(cfg);
}

int main(void) {
  CHECK(hfw_version() != NULL && hfw_version()[0] != '\0');
  CHECK(hfw_config_create(NULL) == HFW_ERR_INVALID_ARGUMENT);
  test_config();
  test_solve();
  test_run();
  if (failures) {
    fprintf(stderr, "%d check(s) failed\n", failures);
    return 1;
  }
  printf("c api: all checks passed\n");
  return 0;
}
