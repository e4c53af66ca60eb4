#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rankpc::text {

/// Shortest decimal form that parses back to the same double. Never depends on
/// the global locale.
std::string format_double(double value);

/// Parses the whole of `s` as a double; throws std::invalid_argument otherwise.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char delimiter);

}  // namespace rankpc::text
