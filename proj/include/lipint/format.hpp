#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "lipint/errors.hpp"

namespace lipint {

// Shortest decimal form that round-trips a double exactly (locale-free).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Prefer a shorter representation when it parses back to the same bits.
    for (int prec = 1; prec < 17; ++prec) {
        char s[40];
        std::snprintf(s, sizeof(s), "%.*g", prec, v);
        if (std::strtod(s, nullptr) == v) return s;
    }
    return buf;
}

inline double parse_double(std::string_view s) {
    char* end = nullptr;
    const std::string tmp(s);
    const double v = std::strtod(tmp.c_str(), &end);
    if (end == tmp.c_str())
        throw input_error("expected a number, got '" + tmp + "'");
    return v;
}

// Write via temp file + rename so readers never observe a partial file.
inline void atomic_write_file(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw input_error("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw input_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw input_error("cannot open '" + path.string() + "'");
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

} // namespace lipint
