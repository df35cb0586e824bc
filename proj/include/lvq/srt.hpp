// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"

namespace lvq {

namespace detail {

// "HH:MM:SS,mmm" (or '.' before the millisecond field) to seconds.
inline bool parse_srt_time(const std::string& s, double& out) {
    int h = 0, m = 0, sec = 0, ms = 0;
    char sep = 0;
    if (std::sscanf(s.c_str(), "%d:%d:%d%c%3d", &h, &m, &sec, &sep, &ms) != 5) return false;
    if ((sep != ',' && sep != '.') || h < 0 || m < 0 || m > 59 || sec < 0 || sec > 59 || ms < 0)
        return false;
    out = h * 3600.0 + m * 60.0 + sec + ms / 1000.0;
    return true;
}

// Removes <...> markup spans; the tag body is discarded.
inline std::string strip_tags(const std::string& s) {
    std::string out;
    bool in_tag = false;
    for (char c : s) {
        if (c == '<') {
            in_tag = true;
        } else if (c == '>' && in_tag) {
            in_tag = false;
        } else if (!in_tag) {
            out.push_back(c);
        }
    }
    return out;
}

} // namespace detail

// Parses SubRip text. Cues are sorted by start time; cues whose text is empty
// after markup removal are dropped.
inline Transcript parse_srt(const std::string& text) {
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
        if (!cur.empty() && cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    if (!lines.empty() && lines[0].size() >= 3 && lines[0].compare(0, 3, "\xEF\xBB\xBF") == 0)
        lines[0].erase(0, 3);

    Transcript tr;
    std::size_t i = 0;
    const std::size_t n = lines.size();
    while (i < n) {
        while (i < n && trim(lines[i]).empty()) ++i;
        if (i >= n) break;

        // Optional numeric index line before the timing line.
        std::size_t ts_line = i;
        if (trim(lines[i]).find("-->") == std::string::npos) {
            const std::string t = trim(lines[i]);
            const bool numeric = !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) {
                return std::isdigit(c);
            });
            if (!numeric)
                throw FormatError("line " + std::to_string(i + 1) + ": expected cue index or timing");
            ts_line = i + 1;
        }
        if (ts_line >= n || trim(lines[ts_line]).find("-->") == std::string::npos)
            throw FormatError("line " + std::to_string(ts_line + 1) + ": expected timing line");

        const std::string ts = trim(lines[ts_line]);
        const std::size_t arrow = ts.find("-->");
        double start = 0.0, end = 0.0;
        if (!detail::parse_srt_time(trim(ts.substr(0, arrow)), start) ||
            !detail::parse_srt_time(trim(ts.substr(arrow + 3)), end))
            throw FormatError("line " + std::to_string(ts_line + 1) + ": unparseable timestamp \"" +
                              ts + "\"");
        if (!(start < end))
            throw FormatError("line " + std::to_string(ts_line + 1) +
                              ": cue start must precede cue end");

        std::string body;
        i = ts_line + 1;
        while (i < n && !trim(lines[i]).empty()) {
            if (!body.empty()) body += ' ';
            body += lines[i];
            ++i;
        }
        const std::string clean = trim(detail::strip_tags(body));
        if (!clean.empty()) tr.cues.push_back({start, end, clean});
    }

    std::stable_sort(tr.cues.begin(), tr.cues.end(),
                     [](const Cue& a, const Cue& b) { return a.start < b.start; });
    return tr;
}

inline Transcript load_srt(const std::filesystem::path& path) {
    return parse_srt(read_file(path));
}

} // namespace lvq
