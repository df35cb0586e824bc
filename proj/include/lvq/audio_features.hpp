// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>

#include "lvq/contours.hpp"
#include "lvq/error.hpp"
#include "lvq/pitch.hpp"
#include "lvq/types.hpp"
#include "lvq/voice_quality.hpp"

namespace lvq {

// Whole-track prosody summary. Fields are absent (with a reason keyed by the
// field name) when their inputs are insufficient, e.g. no voiced speech.
struct AudioFeatureSet {
    std::optional<double> f0_avg;
    std::optional<double> pvq;
    std::optional<double> jitter;
    std::optional<double> delta_jitter;
    std::optional<double> shimmer;
    std::optional<double> log_hnr;
    std::optional<double> loudness_avg;
    std::optional<double> modulated_loudness_avg;
    std::optional<double> rms_energy_avg;
    std::optional<double> harmonicity_avg;
    std::map<std::string, std::string> absent;
};

// Mean of a contour, skipping warm-up frames.
inline double contour_average(const Contour& c) {
    if (static_cast<int>(c.value.size()) <= c.warmup_frames)
        throw InsufficientDataError("contour average: no frames past warm-up");
    double sum = 0.0;
    int n = 0;
    for (std::size_t i = c.warmup_frames; i < c.value.size(); ++i) {
        sum += c.value[i];
        ++n;
    }
    return sum / n;
}

inline AudioFeatureSet audio_feature_set(const AudioTrack& track, const PitchTrack& pitch,
                                         const FrameConfig& frame_cfg = {},
                                         double pvq_window_seconds = 10.0) {
    AudioFeatureSet out;
    auto record = [&out](const char* field, auto&& compute) {
        try {
            compute();
        } catch (const InsufficientDataError& e) {
            out.absent[field] = e.what();
        }
    };

    record("f0_avg", [&] {
        const std::vector<double> f0s = pitch.voiced_f0();
        if (f0s.empty()) throw InsufficientDataError("f0: no voiced frames");
        double sum = 0.0;
        for (double f : f0s) sum += f;
        out.f0_avg = sum / static_cast<double>(f0s.size());
    });
    record("pvq", [&] { out.pvq = pvq(pitch, pvq_window_seconds); });
    record("jitter", [&] {
        const auto [jit, djit] = jitter(pitch);
        out.jitter = jit;
        out.delta_jitter = djit;
    });
    if (!out.jitter) out.absent["delta_jitter"] = out.absent["jitter"];
    record("shimmer", [&] { out.shimmer = shimmer(track, pitch, frame_cfg); });
    record("log_hnr", [&] { out.log_hnr = log_hnr(track, pitch, frame_cfg); });
    record("loudness_avg",
           [&] { out.loudness_avg = contour_average(loudness_contour(track, frame_cfg)); });
    record("modulated_loudness_avg", [&] {
        out.modulated_loudness_avg = contour_average(modulated_loudness_contour(track, frame_cfg));
    });
    record("rms_energy_avg",
           [&] { out.rms_energy_avg = contour_average(rms_energy_contour(track, frame_cfg)); });
    record("harmonicity_avg",
           [&] { out.harmonicity_avg = contour_average(harmonicity_contour(track, frame_cfg)); });
    return out;
}

inline AudioFeatureSet audio_feature_set(const AudioTrack& track,
                                         const FrameConfig& frame_cfg = {},
                                         const PitchConfig& pitch_cfg = {}) {
    return audio_feature_set(track, estimate_pitch(track, frame_cfg, pitch_cfg), frame_cfg);
}

} // namespace lvq
