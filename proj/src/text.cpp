#include "keygraph/text.hpp"

#include <array>
#include <charconv>
#include <stdexcept>

namespace keygraph::text {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class T>
T parse_number(std::string_view raw, const char* what) {
    const std::string_view s = trim(raw);
    std::string_view body = s;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    T value{};
    const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (body.empty() || ec != std::errc{} || ptr != body.data() + body.size()) {
        throw std::invalid_argument(std::string("expected ") + what + ", got '" + std::string(raw) + "'");
    }
    return value;
}

}  // namespace

std::string format_real(double value) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("format_real failed");
    return std::string(buf.data(), ptr);
}

double parse_real(std::string_view s) { return parse_number<double>(s, "a real number"); }

long long parse_int(std::string_view s) { return parse_number<long long>(s, "an integer"); }

std::uint64_t parse_u64(std::string_view s) {
    return parse_number<std::uint64_t>(s, "an unsigned 64-bit integer");
}

std::vector<double> parse_real_list(std::string_view s, char sep) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto end = s.find(sep, start);
        out.push_back(parse_real(s.substr(start, end - start)));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

std::vector<int> parse_int_list(std::string_view s, char sep) {
    std::vector<int> out;
    std::size_t start = 0;
    while (true) {
        const auto end = s.find(sep, start);
        const long long v = parse_int(s.substr(start, end - start));
        if (v < INT32_MIN || v > INT32_MAX) {
            throw std::invalid_argument("integer out of range: " + std::to_string(v));
        }
        out.push_back(static_cast<int>(v));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

}  // namespace keygraph::text
