// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lvq {

// Mono PCM audio held as normalized floats in [-1, 1].
struct AudioTrack {
    std::vector<float> samples;
    int sample_rate = 0;

    double duration_seconds() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// One subtitle cue: [start, end) in seconds, tag-free text.
struct Cue {
    double start = 0.0;
    double end = 0.0;
    std::string text;
};

struct Transcript {
    std::vector<Cue> cues;

    double end_seconds() const { return cues.empty() ? 0.0 : cues.back().end; }
};

// Axis-aligned box, origin at the top-left of the page, units are page units.
struct TextBox {
    double x = 0.0, y = 0.0, w = 0.0, h = 0.0;
    std::string text;

    friend bool operator==(const TextBox&, const TextBox&) = default;
};

struct ImageBox {
    double x = 0.0, y = 0.0, w = 0.0, h = 0.0;

    friend bool operator==(const ImageBox&, const ImageBox&) = default;
};

struct SlideLayout {
    int slide_index = 0; // 1-based position in the deck
    double width = 0.0;
    double height = 0.0;
    std::vector<TextBox> text;
    std::vector<ImageBox> images;

    friend bool operator==(const SlideLayout&, const SlideLayout&) = default;
};

// When each slide is on screen, in seconds from the start of the video.
struct SlideInterval {
    int slide_index = 0;
    double start = 0.0;
    double end = 0.0;
};

struct SlideTiming {
    std::vector<SlideInterval> intervals; // sorted by start, non-overlapping
};

// One quiz question as answered by one participant in one phase.
struct QuizResponse {
    std::string question_id;
    std::string phase; // "pre" or "post"
    int n_options = 0;
    std::vector<bool> key;                    // correct pattern, one bit per option
    std::optional<std::vector<bool>> marked;  // absent = participant skipped
};

// Everything one participant produced for one video.
struct StudyRecord {
    std::string video_id;
    std::string participant_id;
    std::vector<std::pair<std::string, int>> ratings; // (aspect, score 1..5)
    std::vector<QuizResponse> quiz;
};

// Frame-based analysis settings shared by the audio operations.
enum class Window { hamming };

struct FrameConfig {
    double frame_length = 0.025; // seconds
    double hop = 0.010;          // seconds
    Window window = Window::hamming;
};

// Per-frame fundamental frequency estimates. f0[i] is meaningful only when
// voiced[i]; frame i starts at i * hop seconds.
struct PitchTrack {
    std::vector<double> f0;
    std::vector<bool> voiced;
    double hop = 0.0;

    std::size_t size() const { return f0.size(); }
    std::vector<double> voiced_f0() const {
        std::vector<double> out;
        for (std::size_t i = 0; i < f0.size(); ++i)
            if (voiced[i]) out.push_back(f0[i]);
        return out;
    }
};

enum class ContourKind { loudness, modulated_loudness, rms_energy, harmonicity };

// A scalar value per frame; frame i starts at i * hop seconds. The first
// warmup_frames values are filter transients and are skipped by averages.
struct Contour {
    std::vector<double> value;
    double hop = 0.0;
    ContourKind kind = ContourKind::loudness;
    int warmup_frames = 0;
};

// Syllable nucleus times in seconds plus the phonation total used for rates.
struct SyllableTrack {
    std::vector<double> nuclei;
    double phonation_seconds = 0.0;
    double total_seconds = 0.0;
};

} // namespace lvq
