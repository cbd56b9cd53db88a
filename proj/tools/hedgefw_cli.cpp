// hedgefw: Monte Carlo comparison of HedgeStochFW and cross-validated LASSO.
//
//   hedgefw run   [-c FILE] [--KEY VALUE ...] [--paper-scale] [--print-config]
//   hedgefw gen   [-c FILE] [--KEY VALUE ...] -o INSTANCE
//   hedgefw solve INSTANCE [-c FILE] [--KEY VALUE ...]
//   hedgefw plot  RECORDS_CSV [-o DIR]

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hedgefw/hedgefw.h"

namespace {

struct ConfigDeleter {
  void operator()(hfw_config* c) const { hfw_config_destroy(c); }
};
struct InstanceDeleter {
  void operator()(hfw_instance* i) const { hfw_instance_destroy(i); }
};
struct SolutionDeleter {
  void operator()(hfw_solution* s) const { hfw_solution_destroy(s); }
};
using ConfigPtr = std::unique_ptr<hfw_config, ConfigDeleter>;
using InstancePtr = std::unique_ptr<hfw_instance, InstanceDeleter>;
using SolutionPtr = std::unique_ptr<hfw_solution, SolutionDeleter>;

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(hfw_status status) {
  if (status != HFW_OK) throw CliError(hfw_last_error());
}

// Config file plus per-key override flags shared by several subcommands.
struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> overrides;
  bool paper_scale = false;
  bool print_config = false;

  void attach(CLI::App* app, bool with_run_flags) {
    app->add_option("-c,--config", file, "key=value configuration file")->check(CLI::ExistingFile);
    for (std::size_t i = 0; i < hfw_config_num_keys(); ++i) {
      const std::string key = hfw_config_key(i);
      app->add_option_function<std::string>(
          "--" + key, [this, key](const std::string& v) { overrides[key] = v; },
          "override config key '" + key + "'");
    }
    if (with_run_flags) {
      app->add_flag("--paper-scale", paper_scale, "run 1000 trials unless --trials is given");
    }
    app->add_flag("--print-config", print_config, "print the resolved configuration and exit");
  }

  ConfigPtr build() const {
    hfw_config* raw = nullptr;
    check(hfw_config_create(&raw));
    ConfigPtr cfg(raw);
    if (!file.empty()) check(hfw_config_load_file(cfg.get(), file.c_str()));
    if (paper_scale && !overrides.count("trials")) {
      check(hfw_config_set(cfg.get(), "trials", "1000"));
    }
    for (const auto& [k, v] : overrides) check(hfw_config_set(cfg.get(), k.c_str(), v.c_str()));
    return cfg;
  }
};

std::string dump(const hfw_config* cfg) {
  std::size_t needed = 0;
  const hfw_status s = hfw_config_dump(cfg, nullptr, 0, &needed);
  if (s != HFW_ERR_BUFFER_TOO_SMALL) check(s);
  std::string text(needed, '\0');
  check(hfw_config_dump(cfg, text.data(), text.size(), &needed));
  text.resize(needed - 1);
  return text;
}

int cmd_run(const ConfigOptions& opts) {
  ConfigPtr cfg = opts.build();
  if (opts.print_config) {
    std::fputs(dump(cfg.get()).c_str(), stdout);
    return 0;
  }
  hfw_run_summary summary{};
  check(hfw_run_experiment(cfg.get(), &summary));
  std::printf("trials=%zu records=%zu failed_trials=%zu\n", summary.trials, summary.records,
              summary.failed_trials);
  std::printf("hedge_fw total time %.6f s, cv_lasso total time %.6f s (ratio %.4f)\n",
              summary.hedge_fw_total_time_s, summary.cv_lasso_total_time_s,
              summary.cv_lasso_total_time_s > 0
                  ? summary.hedge_fw_total_time_s / summary.cv_lasso_total_time_s
                  : 0.0);
  std::printf("max l1 excess %.3g, max hedge relative error %.3g, ordering %s\n",
              summary.max_l1_excess, summary.max_hedge_relative_error,
              summary.hedge_ordering_consistent ? "consistent" : "INCONSISTENT");
  return summary.failed_trials == 0 ? 0 : 3;
}

int cmd_gen(const ConfigOptions& opts, const std::string& out_path) {
  ConfigPtr cfg = opts.build();
  if (opts.print_config) {
    std::fputs(dump(cfg.get()).c_str(), stdout);
    return 0;
  }
  hfw_instance* raw = nullptr;
  check(hfw_instance_generate(cfg.get(), &raw));
  InstancePtr inst(raw);
  check(hfw_instance_write(inst.get(), out_path.c_str()));
  std::size_t n = 0, p = 0;
  check(hfw_instance_shape(inst.get(), &n, &p));
  std::printf("wrote %s (n=%zu, p=%zu)\n", out_path.c_str(), n, p);
  return 0;
}

void print_estimate(const hfw_solution* sol, hfw_method method, const char* name, std::size_t p) {
  std::vector<double> beta(p);
  check(hfw_solution_estimate(sol, method, beta.data(), p));
  std::printf("[%s]\n", name);
  hfw_metrics m{};
  if (hfw_solution_metrics(sol, method, &m) == HFW_OK) {
    std::printf("pred_error=%.17g resid_error=%.17g est_error=%.17g support_f1=%.17g "
                "wall_time_s=%.6f\n",
                m.pred_error, m.resid_error, m.est_error, m.support_f1, m.wall_time_s);
  }
  std::printf("nonzeros:");
  for (std::size_t j = 0; j < p; ++j) {
    if (beta[j] != 0.0) std::printf(" %zu:%.17g", j, beta[j]);
  }
  std::printf("\n");
}

int cmd_solve(const ConfigOptions& opts, const std::string& instance_path) {
  hfw_instance* raw = nullptr;
  check(hfw_instance_read(instance_path.c_str(), &raw));
  InstancePtr inst(raw);
  ConfigPtr cfg = opts.build();
  hfw_solution* sraw = nullptr;
  check(hfw_solve(inst.get(), cfg.get(), &sraw));
  SolutionPtr sol(sraw);

  std::size_t n = 0, p = 0;
  check(hfw_instance_shape(inst.get(), &n, &p));
  const std::size_t g = hfw_solution_num_experts(sol.get());
  std::vector<double> radii(g), weights(g);
  check(hfw_solution_hedge(sol.get(), radii.data(), weights.data(), g));
  std::size_t expert = 0;
  int dirac = 0;
  check(hfw_solution_selection(sol.get(), &expert, &dirac));

  std::printf("instance n=%zu p=%zu\n[hedge weights]\n", n, p);
  for (std::size_t r = 0; r < g; ++r) {
    std::printf("radius=%.17g weight=%.17g\n", radii[r], weights[r]);
  }
  std::printf("selected expert %zu (%s)\n", expert, dirac ? "dirac" : "not dirac");
  std::printf("cv best lambda %.17g\n", hfw_solution_best_lambda(sol.get()));
  print_estimate(sol.get(), HFW_METHOD_HEDGE_FW_AGGREGATE, "hedge_fw_aggregate", p);
  print_estimate(sol.get(), HFW_METHOD_HEDGE_FW_SELECT, "hedge_fw_select", p);
  print_estimate(sol.get(), HFW_METHOD_CV_LASSO, "cv_lasso", p);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HedgeStochFW vs cross-validated LASSO"};
  app.require_subcommand(1);

  ConfigOptions run_opts, gen_opts, solve_opts;
  auto* run = app.add_subcommand("run", "Monte Carlo sweep writing records.csv and summary.txt");
  run_opts.attach(run, true);

  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "write one synthetic instance file");
  gen_opts.attach(gen, false);
  gen->add_option("-o,--out", gen_out, "instance file to write")->required();

  std::string instance_path;
  auto* solve = app.add_subcommand("solve", "run both methods on an instance file");
  solve->add_option("instance", instance_path, "instance file")->required()->check(CLI::ExistingFile);
  solve_opts.attach(solve, false);

  std::string records_path, plot_dir = ".";
  auto* plot = app.add_subcommand("plot", "render SVG histograms from records.csv");
  plot->add_option("records", records_path, "records.csv")->required()->check(CLI::ExistingFile);
  plot->add_option("-o,--out-dir", plot_dir, "directory for the SVG files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_opts);
    if (*gen) return cmd_gen(gen_opts, gen_out);
    if (*solve) return cmd_solve(solve_opts, instance_path);
    if (*plot) {
      check(hfw_plot(records_path.c_str(), plot_dir.c_str()));
      std::printf("wrote %s/pred_error.svg and %s/wall_time_s.svg\n", plot_dir.c_str(),
                  plot_dir.c_str());
      return 0;
    }
  } catch (const CliError& e) {
    std::fprintf(stderr, "hedgefw: %s\n", e.what());
    return 2;
  }
  return 1;
}
