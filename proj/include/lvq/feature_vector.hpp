// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/util.hpp"

namespace lvq {

// The 22 per-video features, in report order.
inline constexpr std::array<std::string_view, 22> kFeatureNames = {
    "loudness_avg",        "modulated_loudness_avg", "rms_energy_avg",
    "f0_avg",              "jitter",                 "delta_jitter",
    "shimmer",             "log_hnr",                "harmonicity_avg",
    "pvq",                 "speech_rate",            "articulation_rate",
    "avg_syllable_duration", "text_ratio_avg",       "text_ratio_var",
    "image_ratio_avg",     "image_ratio_var",        "highlight_of_text",
    "detailing_avg",       "detailing_var",          "coverage_avg",
    "coverage_var",
};

inline std::size_t feature_index(std::string_view name) {
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
        if (kFeatureNames[i] == name) return i;
    throw ValidationError("unknown feature \"" + std::string(name) + "\"");
}

// A computed feature is a value; an absent one is a reason string.
struct FeatureVector {
    std::array<std::optional<double>, 22> values;
    std::map<std::string, std::string> absent;

    std::optional<double>& operator[](std::string_view name) { return values[feature_index(name)]; }
    const std::optional<double>& operator[](std::string_view name) const {
        return values[feature_index(name)];
    }

    void set(std::string_view name, double v) { values[feature_index(name)] = v; }
    void miss(std::string_view name, const std::string& reason) {
        values[feature_index(name)].reset();
        absent[std::string(name)] = reason;
    }
    bool complete() const {
        for (const auto& v : values)
            if (!v) return false;
        return true;
    }
};

// video_id plus one column per feature; absent features are empty cells.
inline std::string dump_features_csv(
    const std::vector<std::pair<std::string, FeatureVector>>& rows) {
    std::string out = "video_id";
    for (std::string_view name : kFeatureNames) {
        out += ',';
        out += name;
    }
    out += '\n';
    for (const auto& [video, fv] : rows) {
        out += video;
        for (const auto& v : fv.values) {
            out += ',';
            if (v) out += format_double(*v);
        }
        out += '\n';
    }
    return out;
}

inline std::vector<std::pair<std::string, FeatureVector>> parse_features_csv(
    const std::string& text) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                if (!cur.empty() && cur.back() == '\r') cur.pop_back();
                lines.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }
    if (lines.empty()) throw FormatError("features: empty file");

    const std::vector<std::string> header = split(lines[0], ',');
    if (header.empty() || trim(header[0]) != "video_id")
        throw FormatError("features: first column must be video_id");
    std::vector<std::size_t> col_to_feature;
    for (std::size_t c = 1; c < header.size(); ++c)
        col_to_feature.push_back(feature_index(trim(header[c])));

    std::vector<std::pair<std::string, FeatureVector>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::string ctx = "features row " + std::to_string(i + 1);
        const std::vector<std::string> cells = split(lines[i], ',');
        if (cells.size() != header.size())
            throw FormatError(ctx + ": expected " + std::to_string(header.size()) + " fields");
        FeatureVector fv;
        for (std::size_t c = 1; c < cells.size(); ++c) {
            const std::string cell = trim(cells[c]);
            if (!cell.empty())
                fv.values[col_to_feature[c - 1]] = parse_double(cell, ctx);
        }
        rows.emplace_back(trim(cells[0]), std::move(fv));
    }
    return rows;
}

} // namespace lvq
