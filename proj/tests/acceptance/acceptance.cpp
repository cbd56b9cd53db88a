// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only if
// every criterion passes. Sweeps write their outputs under
// ./acceptance_output/ so the recorded summaries can be inspected afterwards.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hedgefw/baseline_lasso.hpp"
#include "hedgefw/config.hpp"
#include "hedgefw/datagen.hpp"
#include "hedgefw/experiment.hpp"
#include "hedgefw/hedge.hpp"
#include "hedgefw/records.hpp"
#include "hedgefw/stochastic_fw.hpp"
#include "hedgefw/text_format.hpp"

using namespace hedgefw;
namespace fs = std::filesystem;

namespace {

const fs::path kOutputRoot = fs::current_path() / "acceptance_output";

// Aggregated over every sweep this binary runs.
double g_max_l1_excess = 0.0;
double g_max_hedge_relative_error = 0.0;
bool g_ordering_consistent = true;
std::size_t g_sweeps = 0;

struct Verdict {
  bool pass;
  std::string detail;
};

int g_failures = 0;

void report(int criterion, const char* name, const Verdict& v) {
  std::printf("criterion %2d  %-4s  %s: %s\n", criterion, v.pass ? "PASS" : "FAIL", name,
              v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++g_failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

ExperimentResult sweep(const std::string& name, const std::string& settings) {
  ConfigBuilder b;
  b.apply_text(settings);
  b.set("output_dir", (kOutputRoot / name).string());
  const ExperimentConfig cfg = b.build();
  fs::remove_all(cfg.output_dir);
  ExperimentResult res = run_experiment(cfg);
  g_max_l1_excess = std::max(g_max_l1_excess, res.max_l1_excess);
  g_max_hedge_relative_error = std::max(g_max_hedge_relative_error, res.max_hedge_relative_error);
  g_ordering_consistent = g_ordering_consistent && res.hedge_ordering_consistent;
  ++g_sweeps;
  return res;
}

std::vector<double> values_of(const ExperimentResult& res, Method m,
                              double ExperimentRecord::*field) {
  std::vector<double> out;
  for (const auto& r : res.records) {
    if (r.method == m && r.error.empty()) out.push_back(r.*field);
  }
  return out;
}

double median_of(const ExperimentResult& res, Method m) {
  return quantile(values_of(res, m, &ExperimentRecord::pred_error), 0.5);
}

double total_time(const ExperimentResult& res, Method m) {
  const auto v = values_of(res, m, &ExperimentRecord::wall_time_s);
  return std::accumulate(v.begin(), v.end(), 0.0);
}

/// Median-parity check for one sweep: better hedge median <= 2 x cv median.
bool parity_cell(const ExperimentResult& res, std::string& detail) {
  const double agg = median_of(res, Method::kHedgeFwAggregate);
  const double sel = median_of(res, Method::kHedgeFwSelect);
  const double cv = median_of(res, Method::kCvLasso);
  const double ratio = std::min(agg, sel) / cv;
  detail += fmt(" [%s ratio %.3g]", res.failed_trials ? "failures," : "", ratio);
  return res.failed_trials == 0 && ratio <= 2.0;
}

std::string cell_settings(std::size_t n, std::size_t p, double sigma) {
  return "n=" + std::to_string(n) + "\np=" + std::to_string(p) +
         "\ns0=5\nsigma=" + format_shortest(sigma) + "\ntrials=50\ngrid_size=20\n"
         "emit_svg=true\nseed=20240611\n";
}

Verdict criterion_mse_parity() {
  bool pass = true;
  std::string detail = "median pred_error, best hedge / cv_lasso, bound 2:";
  for (std::size_t n : {80u, 100u}) {
    for (double sigma : {0.1, 0.01, 0.001}) {
      const auto res = sweep(fmt("parity_n%zu_sigma%g", n, sigma), cell_settings(n, 200, sigma));
      detail += fmt(" n=%zu,sigma=%g", n, sigma);
      pass = parity_cell(res, detail) && pass;
    }
  }
  return {pass, detail};
}

Verdict criterion_speed() {
  const auto res = sweep("speed", cell_settings(100, 200, 0.1));
  const double hedge = total_time(res, Method::kHedgeFwAggregate);
  const double cv = total_time(res, Method::kCvLasso);
  const double ratio = hedge / cv;
  return {ratio <= 0.5, fmt("total hedge_fw %.4gs / cv_lasso %.4gs = %.3g (bound 0.5, sigma=0.1; "
                            "see %s)",
                            hedge, cv, ratio, res.summary_path.c_str())};
}

Verdict criterion_hedge_invariants() {
  Rng rng(31337);
  double worst_sum = 0.0, worst_shift = 0.0, worst_comp = 0.0;
  bool nonneg = true;
  for (int call = 0; call < 10000; ++call) {
    const std::size_t g = 1 + rng.below(30);
    std::vector<double> w(g);
    for (double& x : w) x = rng.uniform() + 1e-3;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= total;
    const HedgeState s{w, 0, {}};
    const double eta = 1e-3 + 3.0 * rng.uniform();
    const double scale = std::pow(10.0, 4.0 * rng.uniform() - 2.0);
    const double c = scale * 100.0 * (rng.uniform() - 0.5);
    std::vector<double> l1(g), l2(g), shifted(g), both(g);
    for (std::size_t r = 0; r < g; ++r) {
      l1[r] = scale * rng.uniform();
      l2[r] = scale * rng.uniform();
      shifted[r] = l1[r] + c;
      both[r] = l1[r] + l2[r];
    }
    const HedgeState a = hedge_update(s, l1, eta);
    const HedgeState b = hedge_update(s, shifted, eta);
    const HedgeState ab = hedge_update(a, l2, eta);
    const HedgeState once = hedge_update(s, both, eta);
    worst_sum = std::max(worst_sum,
                         std::abs(std::accumulate(a.weights.begin(), a.weights.end(), 0.0) - 1.0));
    for (std::size_t r = 0; r < g; ++r) {
      nonneg = nonneg && a.weights[r] >= 0.0;
      worst_shift = std::max(worst_shift, std::abs(a.weights[r] - b.weights[r]));
      worst_comp = std::max(worst_comp, std::abs(ab.weights[r] - once.weights[r]));
    }
  }
  const bool pass = nonneg && worst_sum <= 1e-12 && worst_shift <= 1e-12 && worst_comp <= 1e-10;
  return {pass, fmt("10000 random updates: nonnegative=%s, max |sum-1| %.2g (1e-12), "
                    "max shift gap %.2g (1e-12), max composition gap %.2g (1e-10)",
                    nonneg ? "yes" : "no", worst_sum, worst_shift, worst_comp)};
}

Verdict criterion_feasibility() {
  // fw_step verifies ||b||_1 <= r + 1e-9 after every step and throws
  // otherwise; a throw would surface as a failed trial in the sweeps.
  return {g_max_l1_excess <= 1e-9,
          fmt("largest ||b_r||_1 - r over every step of %zu sweeps: %.3g (bound 1e-9)", g_sweeps,
              g_max_l1_excess)};
}

Matrix gaussian_matrix(Eigen::Index n, Eigen::Index p, Rng& rng) {
  Matrix x(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < p; ++j) x(i, j) = rng.normal();
  }
  return x;
}

Vector gaussian_vector(Eigen::Index n, Rng& rng) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

bool kkt_holds(const RegressionInstance& inst, const Vector& b, double lambda, double tol) {
  const Vector corr = inst.x().transpose() * (inst.y() - inst.x() * b);
  const double slack = 10.0 * tol * (inst.x().transpose() * inst.y()).lpNorm<Eigen::Infinity>();
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    const double gap = b(j) != 0.0 ? std::abs(corr(j) - lambda * (b(j) > 0 ? 1.0 : -1.0))
                                   : std::abs(corr(j)) - lambda;
    if (gap > slack) return false;
  }
  return true;
}

/// Minimizer of the penalized objective over a grid on [-3, 3]^3, refined twice.
Eigen::Vector3d brute_force_3d(const RegressionInstance& inst, double lambda) {
  const Eigen::Matrix3d gram = inst.x().transpose() * inst.x();
  const Eigen::Vector3d xty = inst.x().transpose() * inst.y();
  const auto objective = [&](const Eigen::Vector3d& b) {
    return 0.5 * (b.dot(gram * b) - 2.0 * b.dot(xty)) + lambda * b.lpNorm<1>();
  };
  Eigen::Vector3d best = Eigen::Vector3d::Zero(), center = best;
  double best_obj = objective(best), half_width = 3.0;
  for (double step : {0.05, 0.002, 0.0001}) {
    const int m = static_cast<int>(std::lround(half_width / step));
    Eigen::Vector3d b;
    for (int i = -m; i <= m; ++i) {
      b(0) = center(0) + i * step;
      for (int j = -m; j <= m; ++j) {
        b(1) = center(1) + j * step;
        for (int k = -m; k <= m; ++k) {
          b(2) = center(2) + k * step;
          const double obj = objective(b);
          if (obj < best_obj) {
            best_obj = obj;
            best = b;
          }
        }
      }
    }
    center = best;
    half_width = 2.0 * step;
  }
  return best;
}

Verdict criterion_solver_oracles() {
  Rng rng(4242);
  std::size_t kkt_checked = 0, kkt_failed = 0;
  const auto check_kkt = [&](const RegressionInstance& inst, const LassoFit& fit, double lambda,
                             double tol) {
    if (!fit.converged) return;
    ++kkt_checked;
    if (!kkt_holds(inst, fit.beta, lambda, tol)) ++kkt_failed;
  };

  double worst_closed = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = 10 + static_cast<Eigen::Index>(rng.below(20));
    const Eigen::Index p = 2 + static_cast<Eigen::Index>(rng.below(8));
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(n, p, rng));
    const Matrix q = qr.householderQ() * Eigen::MatrixXd::Identity(n, p);
    const auto inst = RegressionInstance::validate(q, 2.0 * gaussian_vector(n, rng));
    const Vector xty = q.transpose() * inst.y();
    const double lambda = 1e-3 + 0.8 * rng.uniform() * xty.lpNorm<Eigen::Infinity>();
    LassoOptions opts;
    opts.tol = 1e-12;
    const LassoFit fit = lasso_cd(inst, lambda, std::nullopt, opts);
    Vector closed(p);
    for (Eigen::Index j = 0; j < p; ++j) closed(j) = soft_threshold(xty(j), lambda);
    worst_closed = std::max(worst_closed, (fit.beta - closed).lpNorm<Eigen::Infinity>());
    if (!fit.converged) worst_closed = std::numeric_limits<double>::infinity();
    check_kkt(inst, fit, lambda, opts.tol);
  }

  double worst_brute = 0.0;
  for (int t = 0; t < 10; ++t) {
    Matrix x = gaussian_matrix(6, 3, rng);
    Vector b(3);
    for (Eigen::Index j = 0; j < 3; ++j) b(j) = 2.0 * rng.uniform() - 1.0;
    const auto inst = RegressionInstance::validate(x, x * b + 0.3 * gaussian_vector(6, rng));
    const LassoFit fit = lasso_cd(inst, 0.1);
    worst_brute = std::max(worst_brute,
                           (fit.beta - Vector(brute_force_3d(inst, 0.1))).lpNorm<Eigen::Infinity>());
    check_kkt(inst, fit, 0.1, LassoOptions{}.tol);
  }

  // Path solves at default tolerance, as the cross-validation uses them.
  for (int t = 0; t < 20; ++t) {
    SyntheticSpec spec;
    spec.n = 60;
    spec.p = 100;
    spec.s0 = 5;
    spec.sigma = 0.1;
    spec.seed = 900 + static_cast<std::uint64_t>(t);
    const auto data = gen_instance(spec);
    std::optional<Vector> warm;
    const LambdaGrid path = lambda_path(data.instance, 20);
    for (double lambda : path.lambdas()) {
      const LassoFit fit = lasso_cd(data.instance, lambda, warm);
      check_kkt(data.instance, fit, lambda, LassoOptions{}.tol);
      warm = fit.beta;
    }
  }

  const bool pass = worst_closed <= 1e-8 && worst_brute <= 1e-2 && kkt_failed == 0;
  return {pass, fmt("orthonormal closed form max gap %.2g (1e-8, 100 instances); grid oracle max "
                    "gap %.2g (1e-2, 10 instances); KKT violations %zu of %zu converged solves",
                    worst_closed, worst_brute, kkt_failed, kkt_checked)};
}

Verdict criterion_equivalence() {
  Rng rng(5150);
  double worst = 0.0, worst_sum_scale = 0.0;
  for (int t = 0; t < 10; ++t) {
    Matrix x = gaussian_matrix(20, 10, rng);
    const Vector b = gaussian_vector(10, rng);
    const auto inst = RegressionInstance::validate(x, x * b + 0.5 * gaussian_vector(20, rng));
    const double lambda = (0.05 + 0.5 * rng.uniform()) * lambda_path(inst, 2)[0];
    LassoOptions opts;
    opts.tol = 1e-12;
    const Vector bhat = lasso_cd(inst, lambda, std::nullopt, opts).beta;
    const FwIterate fw = batch_frank_wolfe(full_batch_stats(inst), equivalent_radius(bhat), 10000);
    const double gap =
        std::abs(half_mean_squared_loss(inst, fw.b) - half_mean_squared_loss(inst, bhat));
    worst = std::max(worst, gap);
    worst_sum_scale = std::max(worst_sum_scale, gap * static_cast<double>(inst.n()));
  }
  return {worst <= 1e-3,
          fmt("10 instances 20x10, batch FW 10000 steps at r=||b_lambda||_1: max objective gap "
              "%.3g on (1/2n)||y-Xb||^2 (bound 1e-3); %.3g on (1/2)||y-Xb||^2",
              worst, worst_sum_scale)};
}

Verdict criterion_gradient() {
  Rng rng(777);
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    Matrix x = gaussian_matrix(5, 8, rng);
    const auto inst = RegressionInstance::validate(x, gaussian_vector(5, rng));
    const Vector b = gaussian_vector(8, rng);
    const Vector g = gradient_estimate(full_batch_stats(inst), b);
    const double h = 1e-5;
    for (Eigen::Index j = 0; j < 8; ++j) {
      Vector plus = b, minus = b;
      plus(j) += h;
      minus(j) -= h;
      const double fd =
          (half_mean_squared_loss(inst, plus) - half_mean_squared_loss(inst, minus)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - g(j)));
    }
  }
  return {worst <= 1e-5,
          fmt("20 instances 5x8: max |central difference - gradient| %.3g (bound 1e-5)", worst)};
}

Verdict criterion_hedge_consistency() {
  return {g_max_hedge_relative_error <= 1e-9 && g_ordering_consistent,
          fmt("over every trial of %zu sweeps: max relative error %.3g (bound 1e-9), ordering "
              "consistent=%s",
              g_sweeps, g_max_hedge_relative_error, g_ordering_consistent ? "yes" : "no")};
}

std::string records_without_timing(const std::string& path) {
  std::ifstream in(path);
  std::string line, out;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (cells.size() > 6) cells.erase(cells.begin() + 6);
    for (std::size_t k = 0; k < cells.size(); ++k) out += (k ? "," : "") + cells[k];
    out += '\n';
  }
  return out;
}

Verdict criterion_determinism() {
  const std::string base = cell_settings(100, 200, 0.01) + "trials=20\nemit_svg=false\n";
  const auto a = sweep("determinism_t1_a", base + "threads=1\n");
  const auto b = sweep("determinism_t1_b", base + "threads=1\n");
  const auto c = sweep("determinism_t8", base + "threads=8\n");
  const std::string ra = records_without_timing(a.records_path);
  const bool same_runs = ra == records_without_timing(b.records_path);
  const bool same_threads = ra == records_without_timing(c.records_path);
  const auto rows = static_cast<std::size_t>(std::count(ra.begin(), ra.end(), '\n'));
  return {same_runs && same_threads && rows == 61,
          fmt("records.csv minus wall_time_s, %zu lines: two runs identical=%s, threads 1 vs 8 "
              "identical=%s",
              rows, same_runs ? "yes" : "no", same_threads ? "yes" : "no")};
}

Verdict criterion_correlated_parity() {
  bool pass = true;
  std::string detail = "toeplitz rho=0.9, n=100, p=34; best hedge / cv_lasso, bound 2:";
  for (double sigma : {0.1, 0.01, 0.001}) {
    const auto res = sweep(fmt("toeplitz_sigma%g", sigma),
                           cell_settings(100, 34, sigma) + "design=toeplitz\nrho=0.9\n");
    detail += fmt(" sigma=%g", sigma);
    pass = parity_cell(res, detail) && pass;
  }
  return {pass, detail};
}

}  // namespace

int main() {
  fs::create_directories(kOutputRoot);
  std::printf("acceptance suite (outputs in %s)\n", kOutputRoot.c_str());
  // Sweep-based criteria run first so the invariants below cover their trials.
  const Verdict parity = criterion_mse_parity();
  const Verdict speed = criterion_speed();
  const Verdict determinism = criterion_determinism();
  const Verdict correlated = criterion_correlated_parity();

  report(1, "MSE parity (iid design)", parity);
  report(2, "speed", speed);
  report(3, "hedge invariants", criterion_hedge_invariants());
  report(4, "FW feasibility", criterion_feasibility());
  report(5, "solver oracles", criterion_solver_oracles());
  report(6, "penalized/constrained equivalence", criterion_equivalence());
  report(7, "gradient check", criterion_gradient());
  report(8, "hedge-loss consistency", criterion_hedge_consistency());
  report(9, "determinism", determinism);
  report(10, "MSE parity (correlated design)", correlated);
  std::printf("%d of 10 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
