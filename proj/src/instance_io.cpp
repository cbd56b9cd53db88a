#include "hedgefw/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "hedgefw/text_format.hpp"

namespace hedgefw {
namespace {

void write_row(std::ostream& out, const auto& values) {
  for (Eigen::Index j = 0; j < values.size(); ++j) {
    if (j) out << ' ';
    out << format_shortest(values(j));
  }
  out << '\n';
}

std::vector<double> read_line_values(std::istream& in, std::size_t expected, const std::string& what) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::kParse, "instance file ended before " + what);
  }
  std::vector<double> values;
  values.reserve(expected);
  std::istringstream fields(line);
  std::string tok;
  while (fields >> tok) values.push_back(parse_double(tok, what));
  if (values.size() != expected) {
    throw Error(ErrorCode::kParse, what + ": expected " + std::to_string(expected) +
                                       " values, found " + std::to_string(values.size()));
  }
  return values;
}

}  // namespace

void write_instance(std::ostream& out, const InstanceFile& file) {
  const RegressionInstance& inst = file.instance;
  out << inst.n() << ' ' << inst.p() << ' ' << file.truth.s0 << ' '
      << format_shortest(file.truth.sigma) << ' ' << file.seed << '\n';
  for (Eigen::Index i = 0; i < inst.n(); ++i) write_row(out, inst.x().row(i));
  write_row(out, inst.y());
  write_row(out, file.truth.beta);
}

InstanceFile read_instance(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::kParse, "instance file is empty");
  std::istringstream hs(header);
  std::string tn, tp, ts0, tsigma, tseed, extra;
  if (!(hs >> tn >> tp >> ts0 >> tsigma >> tseed) || (hs >> extra)) {
    throw Error(ErrorCode::kParse, "instance header must be 'n p s0 sigma seed'");
  }
  const auto n = parse_u64(tn, "header n");
  const auto p = parse_u64(tp, "header p");
  const auto s0 = parse_u64(ts0, "header s0");
  const double sigma = parse_double(tsigma, "header sigma");
  const auto seed = parse_u64(tseed, "header seed");
  if (n == 0 || p == 0) throw Error(ErrorCode::kParse, "instance header has n or p = 0");

  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = read_line_values(in, p, "row " + std::to_string(i) + " of X");
    for (std::size_t j = 0; j < p; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
    }
  }
  const auto yv = read_line_values(in, n, "y");
  const auto bv = read_line_values(in, p, "beta");
  Vector y = Eigen::Map<const Vector>(yv.data(), static_cast<Eigen::Index>(n));
  Vector beta = Eigen::Map<const Vector>(bv.data(), static_cast<Eigen::Index>(p));

  GroundTruth truth{std::move(beta), s0, sigma};
  truth.check();
  return InstanceFile{RegressionInstance::validate(std::move(x), std::move(y)), std::move(truth),
                      seed};
}

void save_instance(const std::string& path, const InstanceFile& file) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  write_instance(out, file);
  if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path + "'");
}

InstanceFile load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  return read_instance(in);
}

}  // namespace hedgefw
