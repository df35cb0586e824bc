// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lvq/error.hpp"

namespace lvq {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos) {
            out.emplace_back(s.substr(pos));
            break;
        }
        out.emplace_back(s.substr(pos, next - pos));
        pos = next + 1;
    }
    return out;
}

inline std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

// Parses a whole string as an integer/double; context names the offender.
inline long parse_long(const std::string& s, const std::string& context) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(trim(s), &used);
    } catch (const std::exception&) {
        throw FormatError(context + ": expected integer, got \"" + s + "\"");
    }
    if (used != trim(s).size())
        throw FormatError(context + ": expected integer, got \"" + s + "\"");
    return v;
}

inline double parse_double(const std::string& s, const std::string& context) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(trim(s), &used);
    } catch (const std::exception&) {
        throw FormatError(context + ": expected number, got \"" + s + "\"");
    }
    if (used != trim(s).size())
        throw FormatError(context + ": expected number, got \"" + s + "\"");
    return v;
}

// Mean and unbiased (n-1) variance, two-pass. Variance is 0 for n < 2.
inline std::pair<double, double> mean_and_sample_variance(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return {mean, acc / static_cast<double>(xs.size() - 1)};
}

// Population (1/n) standard deviation.
inline double population_stdev(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / static_cast<double>(xs.size());
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

inline double mean_of(const std::vector<double>& xs) {
    return mean_and_sample_variance(xs).first;
}

// Fixed-notation formatting used by every text output for determinism.
inline std::string format_double(double v, int precision = 9) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

inline std::string format_compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes via a sibling temp file and renames so readers never see a partial file.
inline void atomic_write_file(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ValidationError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw ValidationError("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

} // namespace lvq
