#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

// Locale-independent number formatting and parsing. Parsers throw
// std::invalid_argument naming the offending text.
namespace keygraph::text {

/// Shortest decimal form that round-trips to the same double.
std::string format_real(double value);

double parse_real(std::string_view s);
long long parse_int(std::string_view s);
std::uint64_t parse_u64(std::string_view s);

std::vector<double> parse_real_list(std::string_view s, char sep = ',');
std::vector<int> parse_int_list(std::string_view s, char sep = ',');

template <class Range>
std::string join(const Range& values, std::string_view sep) {
    std::string out;
    bool first = true;
    for (const auto& v : values) {
        if (!first) out += sep;
        first = false;
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) {
            out += format_real(v);
        } else if constexpr (std::is_convertible_v<decltype(v), std::string_view>) {
            out += v;
        } else {
            out += std::to_string(v);
        }
    }
    return out;
}

}  // namespace keygraph::text
