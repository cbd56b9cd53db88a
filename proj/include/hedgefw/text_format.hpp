#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hedgefw {

/// Shortest decimal that parses back to the same double.
std::string format_shortest(double v);
/// printf("%.17g").
std::string format_g17(double v);

/// Whole-string parses; throw Error(kParse) naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
std::uint64_t parse_u64(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

std::string_view trim(std::string_view s);

}  // namespace hedgefw
