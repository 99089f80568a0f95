#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "notesforge/errors.hpp"

namespace notesforge {

// Shortest representation that round-trips exactly; keeps serialized files
// byte-stable across runs.
inline std::string fmt_double(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw SchemaError("invalid number '" + std::string(s) + "'");
    return v;
}

inline long long parse_ll(std::string_view s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw SchemaError("invalid integer '" + std::string(s) + "'");
    return v;
}

}  // namespace notesforge
