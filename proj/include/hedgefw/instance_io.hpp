#pragma once

// Plain-text instance files:
//
//   n p s0 sigma seed
//   <n lines: rows of X>
//   <one line: y>
//   <one line: beta>
//
// Values are space separated and printed in shortest round-trip form, so
// reading a written file reproduces every double exactly.

#include <cstdint>
#include <iosfwd>
#include <string>

#include "hedgefw/core_model.hpp"

namespace hedgefw {

struct InstanceFile {
  RegressionInstance instance;
  GroundTruth truth;
  std::uint64_t seed = 0;
};

void write_instance(std::ostream& out, const InstanceFile& file);
InstanceFile read_instance(std::istream& in);

void save_instance(const std::string& path, const InstanceFile& file);
InstanceFile load_instance(const std::string& path);

}  // namespace hedgefw
