// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lvq/contours.hpp"
#include "lvq/error.hpp"
#include "lvq/lexicon.hpp"
#include "lvq/slide_metrics.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"

namespace lvq {

// Fixed-length span of the transcript with the words whose estimated time
// falls inside it. Word times spread each cue's span uniformly: word i of n
// sits at s + (i + 0.5) * (e - s) / n.
struct TranscriptBlock {
    double start = 0.0;
    double end = 0.0;
    std::vector<std::string> words;
    std::vector<double> times;
};

inline std::vector<std::string> split_whitespace(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

inline std::vector<TranscriptBlock> block_transcript(const Transcript& transcript,
                                                     double block_seconds = 10.0) {
    if (transcript.cues.empty()) throw ValidationError("blocking: transcript has no cues");
    if (!(block_seconds > 0)) throw ValidationError("blocking: block length must be positive");

    double end = 0.0;
    for (const Cue& c : transcript.cues) end = std::max(end, c.end);
    const int count = std::max(1, static_cast<int>(std::ceil(end / block_seconds - 1e-12)));

    std::vector<TranscriptBlock> blocks(count);
    for (int i = 0; i < count; ++i) {
        blocks[i].start = i * block_seconds;
        blocks[i].end = (i + 1) * block_seconds;
    }
    for (const Cue& cue : transcript.cues) {
        const std::vector<std::string> words = split_whitespace(cue.text);
        const double span = cue.end - cue.start;
        const std::size_t n = words.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double t = cue.start + (i + 0.5) * span / static_cast<double>(n);
            const int idx =
                std::clamp(static_cast<int>(std::floor(t / block_seconds)), 0, count - 1);
            blocks[idx].words.push_back(words[i]);
            blocks[idx].times.push_back(t);
        }
    }
    return blocks;
}

// Words spoken while [window_start, window_end) is on screen. Blocks fully
// inside contribute everything; a partially covered block contributes a
// proportional word count, rounded half up, taken from the matching end.
inline std::vector<std::string> words_said(const std::vector<TranscriptBlock>& blocks,
                                           double window_start, double window_end) {
    if (!(window_end > window_start))
        throw ValidationError("words said: window end must exceed window start");
    std::vector<std::string> out;
    for (const TranscriptBlock& block : blocks) {
        const double L = block.end - block.start;
        if (std::min(window_end, block.end) <= std::max(window_start, block.start)) continue;
        const std::size_t n = block.words.size();
        if (n == 0) continue;

        std::size_t from = 0, to = n;
        if (window_start > block.start)
            from = static_cast<std::size_t>(
                std::floor((window_start - block.start) / L * static_cast<double>(n) + 0.5));
        if (window_end < block.end)
            to = static_cast<std::size_t>(
                std::floor((window_end - block.start) / L * static_cast<double>(n) + 0.5));
        for (std::size_t i = from; i < to && i < n; ++i) out.push_back(block.words[i]);
    }
    return out;
}

// A moment where pitch, loudness, and energy peak together.
struct EmphasisEvent {
    double time = 0.0; // mean of the three peak times
    double f0_time = 0.0;
    double loudness_time = 0.0;
    double energy_time = 0.0;
};

namespace detail {

// 5-point centered moving average; edges shrink to the available span.
inline std::vector<double> smooth5(const std::vector<double>& x) {
    std::vector<double> out(x.size());
    const long n = static_cast<long>(x.size());
    for (long i = 0; i < n; ++i) {
        double acc = 0.0;
        int cnt = 0;
        for (long j = std::max<long>(0, i - 2); j <= std::min(n - 1, i + 2); ++j) {
            acc += x[j];
            ++cnt;
        }
        out[i] = acc / cnt;
    }
    return out;
}

// Interior local maxima (strict rise, plateau-tolerant fall) as times.
inline std::vector<double> peak_times(const std::vector<double>& v, double t0, double hop) {
    std::vector<double> peaks;
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) peaks.push_back(t0 + i * hop);
    return peaks;
}

inline const double* nearest(const std::vector<double>& xs, double t) {
    const double* best = nullptr;
    double best_d = 0.0;
    for (const double& x : xs) {
        const double d = std::abs(x - t);
        if (best == nullptr || d < best_d) {
            best = &x;
            best_d = d;
        }
    }
    return best;
}

} // namespace detail

// Emphasis moments inside [window_start, window_end): each contour is
// restricted to the window and smoothed; every pitch peak is matched with the
// nearest loudness and energy peaks, and the triple counts when all three lie
// within the tolerance of their common mean time. Unvoiced frames enter the
// pitch series as zero.
inline std::vector<EmphasisEvent> detect_emphasis(const PitchTrack& pitch, const Contour& loudness,
                                                  const Contour& energy, double window_start,
                                                  double window_end, double tolerance = 1.0) {
    if (!(tolerance > 0)) throw ValidationError("emphasis: tolerance must be positive");
    if (!(window_end > window_start))
        throw ValidationError("emphasis: window end must exceed window start");
    const double hop = pitch.hop;
    if (hop <= 0 || loudness.hop != hop || energy.hop != hop)
        throw ValidationError("emphasis: contours must share the frame hop");

    auto restrict = [&](const std::vector<double>& v) {
        std::vector<double> slice;
        double t0 = 0.0;
        bool first = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double t = i * hop;
            if (t < window_start || t >= window_end) continue;
            if (first) {
                t0 = t;
                first = false;
            }
            slice.push_back(v[i]);
        }
        return std::make_pair(slice, t0);
    };

    std::vector<double> f0_series(pitch.size(), 0.0);
    for (std::size_t i = 0; i < pitch.size(); ++i)
        if (pitch.voiced[i]) f0_series[i] = pitch.f0[i];

    const auto [f0_slice, f0_t0] = restrict(f0_series);
    const auto [loud_slice, loud_t0] = restrict(loudness.value);
    const auto [energy_slice, energy_t0] = restrict(energy.value);

    const std::vector<double> t1 = detail::peak_times(detail::smooth5(f0_slice), f0_t0, hop);
    const std::vector<double> t2 = detail::peak_times(detail::smooth5(loud_slice), loud_t0, hop);
    const std::vector<double> t3 = detail::peak_times(detail::smooth5(energy_slice), energy_t0, hop);

    std::vector<EmphasisEvent> events;
    for (double a : t1) {
        const double* b = detail::nearest(t2, a);
        const double* c = detail::nearest(t3, a);
        if (b == nullptr || c == nullptr) continue;
        const double mean = (a + *b + *c) / 3.0;
        if (std::abs(a - mean) <= tolerance && std::abs(*b - mean) <= tolerance &&
            std::abs(*c - mean) <= tolerance)
            events.push_back({mean, a, *b, *c});
    }
    return events;
}

// Per-slide diagnostics emitted alongside the video-level values.
struct SlideCrossStats {
    int slide_index = 0;
    std::size_t words_said_count = 0;
    std::size_t slide_word_count = 0;
    int emphasis_events = 0;
    std::optional<double> detailing;
    std::optional<double> coverage;
};

struct CrossmodalFeatures {
    std::optional<double> highlight;
    std::optional<double> detailing_avg;
    std::optional<double> detailing_var;
    std::optional<double> coverage_avg;
    std::optional<double> coverage_var;
    std::map<std::string, std::string> absent;

    std::vector<SlideCrossStats> per_slide;
    std::size_t slide_term_count = 0;      // distinct important-text terms
    std::size_t emphasized_term_count = 0; // distinct lemmas near emphasis moments
    int emphasis_event_count = 0;
};

struct CrossmodalConfig {
    double block_seconds = 10.0;
    double emphasis_tolerance = 1.0;
    double cluster_gap_ratio = 0.01;
};

// Joins the spoken and visual channels: how much of the highlighted slide
// vocabulary is spoken with emphasis, how wordy the narration is relative to
// each slide, and how much slide vocabulary is spoken at all.
inline CrossmodalFeatures crossmodal_features(const PitchTrack& pitch, const Contour& loudness,
                                              const Contour& energy, const Transcript& transcript,
                                              const std::vector<SlideLayout>& slides,
                                              const SlideTiming& timing, const Lexicon& lexicon,
                                              const CrossmodalConfig& cfg = {}) {
    CrossmodalFeatures out;
    if (timing.intervals.empty()) {
        out.absent["highlight_of_text"] = "no timed slides";
        out.absent["detailing"] = "no timed slides";
        out.absent["coverage"] = "no timed slides";
        return out;
    }
    if (transcript.cues.empty()) {
        out.absent["highlight_of_text"] = "transcript has no cues";
        out.absent["detailing"] = "transcript has no cues";
        out.absent["coverage"] = "transcript has no cues";
        return out;
    }

    const std::vector<TranscriptBlock> blocks = block_transcript(transcript, cfg.block_seconds);

    auto layout_for = [&slides](int index) -> const SlideLayout& {
        for (const SlideLayout& s : slides)
            if (s.slide_index == index) return s;
        throw ValidationError("crossmodal: timed slide " + std::to_string(index) +
                              " has no layout");
    };

    std::set<std::string> slide_terms;     // St over the whole deck
    std::set<std::string> emphasized;      // lemmas spoken near emphasis moments
    std::vector<double> detailing, coverage;

    for (const SlideInterval& iv : timing.intervals) {
        const SlideLayout& slide = layout_for(iv.slide_index);
        SlideCrossStats stats;
        stats.slide_index = iv.slide_index;

        const ImportantText imp = important_text(slide, cfg.cluster_gap_ratio);
        for (const std::string& t : term_set(imp.lines, lexicon)) slide_terms.insert(t);

        const std::vector<EmphasisEvent> events =
            detect_emphasis(pitch, loudness, energy, iv.start, iv.end, cfg.emphasis_tolerance);
        stats.emphasis_events = static_cast<int>(events.size());
        out.emphasis_event_count += stats.emphasis_events;
        for (const EmphasisEvent& ev : events) {
            const int idx = std::clamp(static_cast<int>(std::floor(ev.time / cfg.block_seconds)), 0,
                                       static_cast<int>(blocks.size()) - 1);
            for (const std::string& w : blocks[idx].words)
                for (const std::string& tok : tokenize(w)) emphasized.insert(lexicon.lemmatize(tok));
        }

        const std::vector<std::string> said = words_said(blocks, iv.start, iv.end);
        stats.words_said_count = said.size();

        std::size_t slide_words = 0;
        std::vector<std::string> slide_lines;
        for (const TextBox& b : slide.text) {
            slide_words += split_whitespace(b.text).size();
            slide_lines.push_back(b.text);
        }
        stats.slide_word_count = slide_words;

        if (slide_words > 0) {
            stats.detailing = static_cast<double>(said.size()) / static_cast<double>(slide_words);
            detailing.push_back(*stats.detailing);
        }
        const std::set<std::string> slide_lemmas = lemma_set(slide_lines, lexicon);
        if (!slide_lemmas.empty()) {
            std::set<std::string> said_lemmas;
            for (const std::string& w : said)
                for (const std::string& tok : tokenize(w)) said_lemmas.insert(lexicon.lemmatize(tok));
            std::size_t hits = 0;
            for (const std::string& l : slide_lemmas)
                if (said_lemmas.count(l)) ++hits;
            stats.coverage = static_cast<double>(hits) / static_cast<double>(slide_lemmas.size());
            coverage.push_back(*stats.coverage);
        }
        out.per_slide.push_back(std::move(stats));
    }

    out.slide_term_count = slide_terms.size();
    out.emphasized_term_count = emphasized.size();

    if (slide_terms.empty()) {
        out.absent["highlight_of_text"] = "no terms in important slide text";
    } else {
        std::size_t hits = 0;
        for (const std::string& t : slide_terms)
            if (emphasized.count(t)) ++hits;
        out.highlight = static_cast<double>(hits) / static_cast<double>(slide_terms.size());
    }

    if (detailing.empty()) {
        out.absent["detailing"] = "no slide with words";
    } else {
        const auto [m, v] = mean_and_sample_variance(detailing);
        out.detailing_avg = m;
        out.detailing_var = v;
    }
    if (coverage.empty()) {
        out.absent["coverage"] = "no slide with lemmas";
    } else {
        const auto [m, v] = mean_and_sample_variance(coverage);
        out.coverage_avg = m;
        out.coverage_var = v;
    }
    return out;
}

} // namespace lvq
