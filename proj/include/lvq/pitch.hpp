// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/framing.hpp"
#include "lvq/types.hpp"

namespace lvq {

struct PitchConfig {
    double f0_min = 50.0;
    double f0_max = 500.0;
    double voicing_threshold = 0.45; // on the normalized autocorrelation peak
    double silence_ratio = 0.01;     // of the loudest frame RMS
};

// Frame-wise fundamental frequency by normalized autocorrelation. Each frame
// is analysed over a window long enough to hold two periods of f0_min; the
// first sufficiently strong correlation peak wins, which avoids locking onto
// octave-down multiples, and is refined by parabolic interpolation.
inline PitchTrack estimate_pitch(const AudioTrack& track, const FrameConfig& frame_cfg = {},
                                 const PitchConfig& cfg = {}) {
    if (track.sample_rate <= 0) throw ValidationError("pitch: sample rate must be positive");
    if (track.duration_seconds() < 2.0 * frame_cfg.frame_length)
        throw InsufficientDataError("pitch: track shorter than two frames");
    if (!(cfg.f0_min > 0.0) || !(cfg.f0_max > cfg.f0_min))
        throw ValidationError("pitch: need 0 < f0_min < f0_max");

    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, frame_cfg);
    const int sr = track.sample_rate;
    const int lag_min = std::max(2, static_cast<int>(std::floor(sr / cfg.f0_max)));
    const int lag_max = static_cast<int>(std::ceil(sr / cfg.f0_min));
    const int want = std::max(plan.frame_samples, 2 * lag_max);

    PitchTrack out;
    out.hop = plan.hop_seconds;
    out.f0.assign(plan.count, 0.0);
    out.voiced.assign(plan.count, false);
    if (plan.count == 0) return out;

    // Frame-core RMS for the silence gate.
    std::vector<double> rms(plan.count, 0.0);
    double max_rms = 0.0;
    for (int i = 0; i < plan.count; ++i) {
        const std::size_t s = plan.start(i);
        double acc = 0.0;
        for (int t = 0; t < plan.frame_samples; ++t) {
            const double v = track.samples[s + t];
            acc += v * v;
        }
        rms[i] = std::sqrt(acc / plan.frame_samples);
        max_rms = std::max(max_rms, rms[i]);
    }

    std::vector<double> x;
    std::vector<double> energy_prefix;
    std::vector<double> corr(lag_max + 1, 0.0);

    for (int i = 0; i < plan.count; ++i) {
        if (max_rms <= 0.0 || rms[i] <= cfg.silence_ratio * max_rms) continue;

        const std::size_t s = plan.start(i);
        const int len = static_cast<int>(std::min<std::size_t>(want, track.samples.size() - s));
        if (len < lag_max + lag_min) continue;

        x.resize(len);
        double mean = 0.0;
        for (int t = 0; t < len; ++t) mean += track.samples[s + t];
        mean /= len;
        for (int t = 0; t < len; ++t) x[t] = track.samples[s + t] - mean;

        energy_prefix.assign(len + 1, 0.0);
        for (int t = 0; t < len; ++t) energy_prefix[t + 1] = energy_prefix[t] + x[t] * x[t];

        double best_r = 0.0;
        for (int tau = lag_min; tau <= lag_max; ++tau) {
            const int overlap = len - tau;
            double num = 0.0;
            for (int t = 0; t < overlap; ++t) num += x[t] * x[t + tau];
            const double e0 = energy_prefix[overlap];
            const double e1 = energy_prefix[len] - energy_prefix[tau];
            const double den = std::sqrt(e0 * e1);
            corr[tau] = den > 0.0 ? num / den : 0.0;
            best_r = std::max(best_r, corr[tau]);
        }
        if (best_r < cfg.voicing_threshold) continue;

        // Earliest local maximum within 90% of the global peak.
        int pick = -1;
        for (int tau = lag_min; tau <= lag_max; ++tau) {
            const double left = tau > lag_min ? corr[tau - 1] : -1.0;
            const double right = tau < lag_max ? corr[tau + 1] : -1.0;
            if (corr[tau] >= left && corr[tau] >= right && corr[tau] >= 0.9 * best_r) {
                pick = tau;
                break;
            }
        }
        if (pick < 0 || corr[pick] < cfg.voicing_threshold) continue;

        double refined = pick;
        if (pick > lag_min && pick < lag_max) {
            const double a = corr[pick - 1], b = corr[pick], c = corr[pick + 1];
            const double den = a - 2.0 * b + c;
            if (den < 0.0) {
                double delta = 0.5 * (a - c) / den;
                delta = std::clamp(delta, -1.0, 1.0);
                refined = pick + delta;
            }
        }
        const double f0 = std::clamp(sr / refined, cfg.f0_min, cfg.f0_max);
        out.f0[i] = f0;
        out.voiced[i] = true;
    }
    return out;
}

} // namespace lvq
