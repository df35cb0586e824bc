// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/types.hpp"

namespace lvq {

// Resolved frame geometry for one track: sizes in samples, count, hop time.
struct FramePlan {
    int frame_samples = 0;
    int hop_samples = 0;
    int count = 0;
    int sample_rate = 0;
    double hop_seconds = 0.0;

    std::size_t start(int frame) const {
        return static_cast<std::size_t>(frame) * static_cast<std::size_t>(hop_samples);
    }
};

inline FramePlan plan_frames(std::size_t n_samples, int sample_rate, const FrameConfig& cfg) {
    if (!(cfg.hop > 0.0) || cfg.hop > cfg.frame_length)
        throw ValidationError("frame hop must satisfy 0 < hop <= frame_length");
    FramePlan plan;
    plan.sample_rate = sample_rate;
    plan.frame_samples = static_cast<int>(std::lround(cfg.frame_length * sample_rate));
    plan.hop_samples = static_cast<int>(std::lround(cfg.hop * sample_rate));
    if (plan.frame_samples < 64)
        throw ValidationError("frame shorter than 64 samples at this sample rate");
    if (plan.hop_samples < 1) throw ValidationError("hop shorter than one sample");
    plan.hop_seconds = static_cast<double>(plan.hop_samples) / sample_rate;
    plan.count = n_samples < static_cast<std::size_t>(plan.frame_samples)
                     ? 0
                     : 1 + static_cast<int>((n_samples - plan.frame_samples) / plan.hop_samples);
    return plan;
}

inline std::vector<double> hamming_window(int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (n - 1));
    return w;
}

// Frame i of the track multiplied by the given window, promoted to double.
inline void windowed_frame(const std::vector<float>& samples, const FramePlan& plan, int frame,
                           const std::vector<double>& window, std::vector<double>& out) {
    out.resize(plan.frame_samples);
    const std::size_t s = plan.start(frame);
    for (int i = 0; i < plan.frame_samples; ++i)
        out[i] = static_cast<double>(samples[s + i]) * window[i];
}

} // namespace lvq
