// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"

namespace lvq {

// Rated aspects, in report order.
inline constexpr std::array<std::string_view, 15> kAspectNames = {
    "clear_language",      "vocal_diversity",  "filler_words",
    "speed_of_presentation", "coverage_of_content", "level_of_detail",
    "highlight_of_imp_content", "summary",     "text_design",
    "image_design",        "formula_design",   "table_design",
    "structure_of_presentation", "entry_level", "overall_rating",
};

inline bool is_known_aspect(const std::string& name) {
    return std::find(kAspectNames.begin(), kAspectNames.end(), name) != kAspectNames.end();
}

namespace detail {

inline std::vector<std::string> csv_lines(const std::string& text) {
    std::vector<std::string> lines;
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
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline std::vector<std::string> csv_row(const std::string& line, std::size_t fields,
                                        const std::string& context) {
    std::vector<std::string> cells = split(line, ',');
    if (cells.size() != fields)
        throw FormatError(context + ": expected " + std::to_string(fields) + " fields, got " +
                          std::to_string(cells.size()));
    for (std::string& c : cells) c = trim(c);
    return cells;
}

inline void require_header(const std::vector<std::string>& lines, const std::string& expected,
                           const std::string& what) {
    if (lines.empty() || trim(lines[0]) != expected)
        throw FormatError(what + ": first line must be \"" + expected + "\"");
}

inline std::vector<bool> parse_bits(const std::string& s, std::size_t expected,
                                    const std::string& context) {
    if (s.size() != expected)
        throw ValidationError(context + ": expected " + std::to_string(expected) + " bits, got " +
                              std::to_string(s.size()));
    std::vector<bool> bits(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1')
            throw FormatError(context + ": bit fields may contain only 0 and 1");
        bits[i] = (s[i] == '1');
    }
    return bits;
}

} // namespace detail

// slide_index,start_seconds,end_seconds rows to a validated, sorted timing.
inline SlideTiming parse_slide_timing(const std::string& text) {
    const auto lines = detail::csv_lines(text);
    detail::require_header(lines, "slide_index,start_seconds,end_seconds", "slide timing");

    SlideTiming timing;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::string ctx = "slide timing row " + std::to_string(i + 1);
        const auto cells = detail::csv_row(lines[i], 3, ctx);
        SlideInterval iv;
        iv.slide_index = static_cast<int>(parse_long(cells[0], ctx));
        iv.start = parse_double(cells[1], ctx);
        iv.end = parse_double(cells[2], ctx);
        if (iv.slide_index < 1) throw ValidationError(ctx + ": slide index must be positive");
        if (iv.start < 0) throw ValidationError(ctx + ": start must be non-negative");
        if (!(iv.end > iv.start)) throw ValidationError(ctx + ": end must exceed start");
        timing.intervals.push_back(iv);
    }

    std::stable_sort(timing.intervals.begin(), timing.intervals.end(),
                     [](const SlideInterval& a, const SlideInterval& b) { return a.start < b.start; });
    for (std::size_t i = 0; i + 1 < timing.intervals.size(); ++i) {
        const auto& a = timing.intervals[i];
        const auto& b = timing.intervals[i + 1];
        if (b.start < a.end - 1e-9)
            throw ValidationError("slide timing: slides " + std::to_string(a.slide_index) +
                                  " and " + std::to_string(b.slide_index) + " overlap");
    }
    std::vector<int> ids;
    for (const auto& iv : timing.intervals) ids.push_back(iv.slide_index);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw ValidationError("slide timing: duplicate slide index");
    return timing;
}

inline SlideTiming load_slide_timing(const std::filesystem::path& path) {
    return parse_slide_timing(read_file(path));
}

struct RatingRow {
    std::string video_id, participant_id, aspect;
    int score = 0;
};

// video_id,participant_id,aspect,score with scores on the 1..5 scale.
inline std::vector<RatingRow> parse_ratings(const std::string& text) {
    const auto lines = detail::csv_lines(text);
    detail::require_header(lines, "video_id,participant_id,aspect,score", "ratings");
    std::vector<RatingRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::string ctx = "ratings row " + std::to_string(i + 1);
        const auto cells = detail::csv_row(lines[i], 4, ctx);
        RatingRow r{cells[0], cells[1], cells[2], static_cast<int>(parse_long(cells[3], ctx))};
        if (r.video_id.empty() || r.participant_id.empty())
            throw ValidationError(ctx + ": empty identifier");
        if (!is_known_aspect(r.aspect))
            throw ValidationError(ctx + ": unknown aspect \"" + r.aspect + "\"");
        if (r.score < 1 || r.score > 5)
            throw ValidationError(ctx + ": score must be in 1..5, got " +
                                  std::to_string(r.score));
        rows.push_back(std::move(r));
    }
    return rows;
}

struct QuizRow {
    std::string video_id, participant_id;
    QuizResponse response;
};

// video_id,participant_id,question_id,phase,n_options,key_bits,marked_bits.
// An empty marked_bits field means the participant skipped the question.
inline std::vector<QuizRow> parse_quiz(const std::string& text) {
    const auto lines = detail::csv_lines(text);
    detail::require_header(lines,
                           "video_id,participant_id,question_id,phase,n_options,key_bits,marked_bits",
                           "quiz");
    std::vector<QuizRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const std::string ctx = "quiz row " + std::to_string(i + 1);
        const auto cells = detail::csv_row(lines[i], 7, ctx);
        QuizRow r;
        r.video_id = cells[0];
        r.participant_id = cells[1];
        if (r.video_id.empty() || r.participant_id.empty())
            throw ValidationError(ctx + ": empty identifier");
        r.response.question_id = cells[2];
        r.response.phase = cells[3];
        if (r.response.phase != "pre" && r.response.phase != "post")
            throw ValidationError(ctx + ": phase must be pre or post, got \"" + r.response.phase +
                                  "\"");
        const long options = parse_long(cells[4], ctx);
        if (options < 1) throw ValidationError(ctx + ": n_options must be positive");
        r.response.n_options = static_cast<int>(options);
        r.response.key = detail::parse_bits(cells[5], static_cast<std::size_t>(options), ctx);
        if (!cells[6].empty())
            r.response.marked = detail::parse_bits(cells[6], static_cast<std::size_t>(options), ctx);
        rows.push_back(std::move(r));
    }
    return rows;
}

// Groups rating and quiz rows into per-(video, participant) records, sorted
// by video then participant for deterministic downstream order.
inline std::vector<StudyRecord> assemble_study_records(const std::vector<RatingRow>& ratings,
                                                       const std::vector<QuizRow>& quiz) {
    std::map<std::pair<std::string, std::string>, StudyRecord> by_key;
    auto slot = [&by_key](const std::string& video, const std::string& participant) -> StudyRecord& {
        StudyRecord& rec = by_key[{video, participant}];
        rec.video_id = video;
        rec.participant_id = participant;
        return rec;
    };
    for (const RatingRow& r : ratings)
        slot(r.video_id, r.participant_id).ratings.emplace_back(r.aspect, r.score);
    for (const QuizRow& q : quiz)
        slot(q.video_id, q.participant_id).quiz.push_back(q.response);

    std::vector<StudyRecord> out;
    out.reserve(by_key.size());
    for (auto& [key, rec] : by_key) out.push_back(std::move(rec));
    return out;
}

inline std::vector<StudyRecord> parse_study_csvs(const std::string& ratings_text,
                                                 const std::string& quiz_text) {
    return assemble_study_records(parse_ratings(ratings_text), parse_quiz(quiz_text));
}

} // namespace lvq
