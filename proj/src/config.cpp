#include "hedgefw/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hedgefw/text_format.hpp"

namespace hedgefw {

void ExperimentConfig::check() const {
  spec.check();
  hedge.check();
  fw.check();
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  if (grid_size < 2) throw Error(ErrorCode::kInvalidArgument, "grid_size must be >= 2");
  if (cv_folds < 2) throw Error(ErrorCode::kInvalidArgument, "cv_folds must be >= 2");
  if (cv_folds > spec.n) throw Error(ErrorCode::kInvalidArgument, "cv_folds exceeds n");
  if (!(cd_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "cd_tol must be positive");
  if (cd_max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "cd_max_iter must be >= 1");
  if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
  if (output_dir.empty()) throw Error(ErrorCode::kInvalidArgument, "output_dir is empty");
}

const std::vector<std::string>& ConfigBuilder::known_keys() {
  static const std::vector<std::string> keys = {
      "n",         "p",          "s0",         "sigma",       "design",      "rho",
      "seed",      "trials",     "grid_size",  "eta",         "dirac_tolerance",
      "loss_cap",  "k_step",     "cv_folds",   "cd_tol",      "cd_max_iter", "standardize",
      "output_dir", "emit_svg",  "threads"};
  return keys;
}

void ConfigBuilder::set(std::string_view key, std::string_view value) {
  key = trim(key);
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw Error(ErrorCode::kParse, "unknown config key '" + std::string(key) + "'");
  }
  values_[std::string(key)] = std::string(trim(value));
}

void ConfigBuilder::apply_text(std::string_view text, std::string_view origin) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kParse, std::string(origin) + ":" + std::to_string(lineno) +
                                         ": expected key=value");
    }
    try {
      set(body.substr(0, eq), body.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(e.code(), std::string(origin) + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void ConfigBuilder::apply_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_text(text.str(), path);
}

ExperimentConfig ConfigBuilder::build() const {
  ExperimentConfig cfg;
  cfg.spec.s0 = 5;
  cfg.spec.sigma = 0.1;
  cfg.spec.seed = 1;
  cfg.spec.design.rho = 0.9;

  auto get = [&](std::string_view key) -> const std::string* {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
  };
  auto size_key = [&](std::string_view key, std::size_t& dst) {
    if (const auto* v = get(key)) dst = static_cast<std::size_t>(parse_u64(*v, key));
  };
  auto real_key = [&](std::string_view key, double& dst) {
    if (const auto* v = get(key)) dst = parse_double(*v, key);
  };
  auto bool_key = [&](std::string_view key, bool& dst) {
    if (const auto* v = get(key)) dst = parse_bool(*v, key);
  };

  for (const char* required : {"n", "p"}) {
    if (!get(required)) {
      throw Error(ErrorCode::kParse, std::string("missing required config key '") + required + "'");
    }
  }
  size_key("n", cfg.spec.n);
  size_key("p", cfg.spec.p);
  size_key("s0", cfg.spec.s0);
  real_key("sigma", cfg.spec.sigma);
  if (const auto* v = get("design")) {
    if (*v == "gaussian_iid") cfg.spec.design.kind = DesignKind::kGaussianIid;
    else if (*v == "toeplitz") cfg.spec.design.kind = DesignKind::kToeplitzCorrelated;
    else throw Error(ErrorCode::kParse, "design: expected gaussian_iid or toeplitz, got '" + *v + "'");
  }
  real_key("rho", cfg.spec.design.rho);
  if (const auto* v = get("seed")) cfg.spec.seed = parse_u64(*v, "seed");
  size_key("trials", cfg.trials);
  size_key("grid_size", cfg.grid_size);
  if (const auto* v = get("eta"); v && *v != "auto") cfg.hedge.eta = parse_double(*v, "eta");
  real_key("dirac_tolerance", cfg.hedge.dirac_tolerance);
  if (const auto* v = get("loss_cap"); v && *v != "off") {
    cfg.hedge.loss_cap = parse_double(*v, "loss_cap");
  }
  real_key("k_step", cfg.fw.k_step);
  size_key("cv_folds", cfg.cv_folds);
  real_key("cd_tol", cfg.cd_tol);
  size_key("cd_max_iter", cfg.cd_max_iter);
  bool_key("standardize", cfg.standardize);
  if (const auto* v = get("output_dir")) cfg.output_dir = *v;
  bool_key("emit_svg", cfg.emit_svg);
  size_key("threads", cfg.threads);

  cfg.check();
  return cfg;
}

std::string dump_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "n=" << c.spec.n << '\n'
      << "p=" << c.spec.p << '\n'
      << "s0=" << c.spec.s0 << '\n'
      << "sigma=" << format_shortest(c.spec.sigma) << '\n'
      << "design="
      << (c.spec.design.kind == DesignKind::kGaussianIid ? "gaussian_iid" : "toeplitz") << '\n'
      << "rho=" << format_shortest(c.spec.design.rho) << '\n'
      << "seed=" << c.spec.seed << '\n'
      << "trials=" << c.trials << '\n'
      << "grid_size=" << c.grid_size << '\n'
      << "eta=" << (c.hedge.eta ? format_shortest(*c.hedge.eta) : std::string("auto")) << '\n'
      << "dirac_tolerance=" << format_shortest(c.hedge.dirac_tolerance) << '\n'
      << "loss_cap=" << (c.hedge.loss_cap ? format_shortest(*c.hedge.loss_cap) : std::string("off"))
      << '\n'
      << "k_step=" << format_shortest(c.fw.k_step) << '\n'
      << "cv_folds=" << c.cv_folds << '\n'
      << "cd_tol=" << format_shortest(c.cd_tol) << '\n'
      << "cd_max_iter=" << c.cd_max_iter << '\n'
      << "standardize=" << (c.standardize ? "true" : "false") << '\n'
      << "output_dir=" << c.output_dir << '\n'
      << "emit_svg=" << (c.emit_svg ? "true" : "false") << '\n'
      << "threads=" << c.threads << '\n';
  return out.str();
}

std::string config_digest(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  // Execution-only settings do not change results and are left out.
  std::istringstream lines(dump_config(config));
  std::string line;
  while (std::getline(lines, line)) {
    if (line.starts_with("threads=") || line.starts_with("output_dir=")) continue;
    for (unsigned char ch : line + '\n') {
      h ^= ch;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace hedgefw
