#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace mf {

// Shortest text that parses back to the same double: 10 -> "10", 10.2 -> "10.2".
std::string format_shortest(double v);

// Like format_shortest but keeps a decimal point on integral values: "10.0".
std::string format_decimal(double v);

// printf-style %.<digits>g, with "-0" normalized to "0".
std::string format_significant(double v, int digits = 7);

// Whole-string parses; nullopt on trailing garbage or overflow.
std::optional<double> parse_double(std::string_view text);
std::optional<std::int64_t> parse_int(std::string_view text);

std::string_view trim(std::string_view text);

}  // namespace mf
