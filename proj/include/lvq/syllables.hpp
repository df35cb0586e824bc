// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/framing.hpp"
#include "lvq/pitch.hpp"
#include "lvq/types.hpp"

namespace lvq {

struct SyllableConfig {
    double silence_below_peak_db = 25.0; // intensity gate below the track maximum
    double min_dip_db = 2.0;             // required dip between consecutive peaks
};

// Syllable nuclei as intensity peaks: a frame-wise power-dB curve is scanned
// for local maxima above the silence gate; a peak counts only when the curve
// dips enough since the previous candidate and the frame is voiced.
inline SyllableTrack detect_syllables(const AudioTrack& track, const PitchTrack& pitch,
                                      const FrameConfig& frame_cfg = {},
                                      const SyllableConfig& cfg = {}) {
    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, frame_cfg);
    if (plan.count == 0) throw InsufficientDataError("syllables: track shorter than one frame");

    std::vector<double> intensity(plan.count);
    double peak_db = -1e9;
    for (int i = 0; i < plan.count; ++i) {
        const std::size_t s = plan.start(i);
        double acc = 0.0;
        for (int t = 0; t < plan.frame_samples; ++t) {
            const double v = track.samples[s + t];
            acc += v * v;
        }
        const double msq = acc / plan.frame_samples;
        intensity[i] = 10.0 * std::log10(std::max(msq, 1e-12));
        peak_db = std::max(peak_db, intensity[i]);
    }
    const double floor_db = peak_db - cfg.silence_below_peak_db;

    // Candidate peaks above the gate.
    std::vector<int> candidates;
    for (int i = 0; i < plan.count; ++i) {
        if (intensity[i] <= floor_db) continue;
        const bool rises = i == 0 || intensity[i] > intensity[i - 1];
        const bool falls = i + 1 == plan.count || intensity[i] >= intensity[i + 1];
        if (rises && falls) candidates.push_back(i);
    }

    SyllableTrack out;
    out.total_seconds = track.duration_seconds();
    int voiced_frames = 0;
    for (std::size_t i = 0; i < pitch.size(); ++i)
        if (pitch.voiced[i]) ++voiced_frames;
    out.phonation_seconds = voiced_frames * pitch.hop;

    int prev = 0; // left edge of the dip search for the next candidate
    for (int c : candidates) {
        double dip = 1e9;
        for (int i = prev; i <= c; ++i) dip = std::min(dip, intensity[i]);
        const bool deep_enough = intensity[c] - dip >= cfg.min_dip_db;
        prev = c;
        if (!deep_enough) continue;
        if (c >= static_cast<int>(pitch.size()) || !pitch.voiced[c]) continue;
        out.nuclei.push_back(plan.start(c) / static_cast<double>(plan.sample_rate) +
                             0.5 * plan.frame_samples / plan.sample_rate);
    }
    return out;
}

struct SpeechRates {
    double speech_rate = 0.0;          // nuclei per second of track
    double articulation_rate = 0.0;    // nuclei per second of phonation
    double avg_syllable_duration = 0.0; // phonation seconds per nucleus
};

inline SpeechRates speech_rates(const SyllableTrack& syl) {
    if (syl.total_seconds <= 0.0)
        throw InsufficientDataError("speech rates: track has no duration");
    if (syl.nuclei.empty()) throw InsufficientDataError("speech rates: no syllable nuclei");
    if (syl.phonation_seconds <= 0.0)
        throw InsufficientDataError("speech rates: no phonation time");
    SpeechRates r;
    const double n = static_cast<double>(syl.nuclei.size());
    r.speech_rate = n / syl.total_seconds;
    r.articulation_rate = n / syl.phonation_seconds;
    r.avg_syllable_duration = syl.phonation_seconds / n;
    return r;
}

} // namespace lvq
