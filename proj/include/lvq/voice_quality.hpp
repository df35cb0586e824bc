// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "lvq/error.hpp"
#include "lvq/framing.hpp"
#include "lvq/pitch.hpp"
#include "lvq/types.hpp"

namespace lvq {

// Relative mean absolute first difference of pulse periods.
inline double jitter_from_periods(const std::vector<double>& periods) {
    if (periods.size() < 2) throw InsufficientDataError("jitter: need at least two periods");
    double diff = 0.0, mean = 0.0;
    for (std::size_t i = 0; i + 1 < periods.size(); ++i) diff += std::abs(periods[i + 1] - periods[i]);
    for (double p : periods) mean += p;
    diff /= static_cast<double>(periods.size() - 1);
    mean /= static_cast<double>(periods.size());
    return diff / mean;
}

// Relative mean absolute second difference of pulse periods.
inline double delta_jitter_from_periods(const std::vector<double>& periods) {
    if (periods.size() < 3) throw InsufficientDataError("delta jitter: need at least three periods");
    double diff = 0.0, mean = 0.0;
    for (std::size_t i = 1; i + 1 < periods.size(); ++i)
        diff += std::abs(periods[i + 1] - 2.0 * periods[i] + periods[i - 1]);
    for (double p : periods) mean += p;
    diff /= static_cast<double>(periods.size() - 2);
    mean /= static_cast<double>(periods.size());
    return diff / mean;
}

// Relative mean absolute first difference of peak amplitudes.
inline double shimmer_from_amplitudes(const std::vector<double>& amps) {
    if (amps.size() < 2) throw InsufficientDataError("shimmer: need at least two amplitudes");
    double diff = 0.0, mean = 0.0;
    for (std::size_t i = 0; i + 1 < amps.size(); ++i) diff += std::abs(amps[i + 1] - amps[i]);
    for (double a : amps) mean += a;
    diff /= static_cast<double>(amps.size() - 1);
    mean /= static_cast<double>(amps.size());
    if (mean <= 0.0) return 0.0;
    return diff / mean;
}

// Harmonics-to-noise ratio in dB from a normalized autocorrelation value,
// clamped to [-20, 60].
inline double log_hnr_from_autocorr(double r) {
    if (r >= 1.0) return 60.0;
    if (r <= 0.0) return -20.0;
    return std::clamp(10.0 * std::log10(r / (1.0 - r)), -20.0, 60.0);
}

namespace detail {

// Maximal runs of consecutive voiced frames as [begin, end) frame ranges.
inline std::vector<std::pair<int, int>> voiced_runs(const PitchTrack& pitch) {
    std::vector<std::pair<int, int>> runs;
    const int n = static_cast<int>(pitch.size());
    int i = 0;
    while (i < n) {
        if (!pitch.voiced[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j < n && pitch.voiced[j]) ++j;
        runs.emplace_back(i, j);
        i = j;
    }
    return runs;
}

} // namespace detail

// Duration-weighted jitter and delta jitter over maximal voiced runs. The
// frame periods are the reciprocals of the frame f0 estimates.
inline std::pair<double, double> jitter(const PitchTrack& pitch) {
    const auto runs = detail::voiced_runs(pitch);
    bool has_long_run = false;
    for (const auto& [b, e] : runs)
        if (e - b >= 3) has_long_run = true;
    if (!has_long_run)
        throw InsufficientDataError("jitter: no voiced run of three or more frames");

    double jit_sum = 0.0, jit_w = 0.0, djit_sum = 0.0, djit_w = 0.0;
    for (const auto& [b, e] : runs) {
        const int len = e - b;
        if (len < 2) continue;
        std::vector<double> periods(len);
        for (int i = 0; i < len; ++i) periods[i] = 1.0 / pitch.f0[b + i];
        jit_sum += len * jitter_from_periods(periods);
        jit_w += len;
        if (len >= 3) {
            djit_sum += len * delta_jitter_from_periods(periods);
            djit_w += len;
        }
    }
    return {jit_sum / jit_w, djit_sum / djit_w};
}

// Duration-weighted shimmer over maximal voiced runs; the per-frame amplitude
// is the raw frame's absolute peak.
inline double shimmer(const AudioTrack& track, const PitchTrack& pitch,
                      const FrameConfig& cfg = {}) {
    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, cfg);
    const auto runs = detail::voiced_runs(pitch);
    bool has_long_run = false;
    for (const auto& [b, e] : runs)
        if (e - b >= 3) has_long_run = true;
    if (!has_long_run)
        throw InsufficientDataError("shimmer: no voiced run of three or more frames");

    double sum = 0.0, weight = 0.0;
    for (const auto& [b, e] : runs) {
        const int len = e - b;
        if (len < 2) continue;
        std::vector<double> amps(len);
        for (int i = 0; i < len; ++i) {
            const std::size_t s = plan.start(b + i);
            double peak = 0.0;
            for (int t = 0; t < plan.frame_samples; ++t)
                peak = std::max(peak, std::abs(static_cast<double>(track.samples[s + t])));
            amps[i] = peak;
        }
        sum += len * shimmer_from_amplitudes(amps);
        weight += len;
    }
    return sum / weight;
}

// Mean log HNR over voiced frames. Per frame, the normalized autocorrelation
// is evaluated at the lag matching that frame's f0.
inline double log_hnr(const AudioTrack& track, const PitchTrack& pitch,
                      const FrameConfig& cfg = {}) {
    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, cfg);
    double sum = 0.0;
    int n = 0;
    std::vector<double> x(plan.frame_samples);
    for (int i = 0; i < plan.count && i < static_cast<int>(pitch.size()); ++i) {
        if (!pitch.voiced[i]) continue;
        const int lag = static_cast<int>(std::lround(track.sample_rate / pitch.f0[i]));
        if (lag < 1 || lag >= plan.frame_samples) continue;

        const std::size_t s = plan.start(i);
        double mean = 0.0;
        for (int t = 0; t < plan.frame_samples; ++t) mean += track.samples[s + t];
        mean /= plan.frame_samples;
        for (int t = 0; t < plan.frame_samples; ++t) x[t] = track.samples[s + t] - mean;

        const int overlap = plan.frame_samples - lag;
        double num = 0.0, e0 = 0.0, e1 = 0.0;
        for (int t = 0; t < overlap; ++t) {
            num += x[t] * x[t + lag];
            e0 += x[t] * x[t];
            e1 += x[t + lag] * x[t + lag];
        }
        const double den = std::sqrt(e0 * e1);
        const double r = den > 0.0 ? num / den : 0.0;
        sum += log_hnr_from_autocorr(r);
        ++n;
    }
    if (n == 0) throw InsufficientDataError("log HNR: no voiced frames");
    return sum / n;
}

// Pitch variability quotient: the f0 coefficient of variation (population
// standard deviation over mean) per 10-second window, averaged over windows
// holding at least ten voiced frames.
inline double pvq(const PitchTrack& pitch, double window_seconds = 10.0) {
    if (pitch.hop <= 0.0) throw ValidationError("pvq: contour hop must be positive");
    const int per_window = std::max(1, static_cast<int>(std::lround(window_seconds / pitch.hop)));
    const int n = static_cast<int>(pitch.size());

    double sum = 0.0;
    int windows = 0;
    for (int w = 0; w * per_window < n; ++w) {
        const int b = w * per_window;
        const int e = std::min(n, b + per_window);
        std::vector<double> f0s;
        for (int i = b; i < e; ++i)
            if (pitch.voiced[i]) f0s.push_back(pitch.f0[i]);
        if (f0s.size() < 10) continue;
        double mean = 0.0;
        for (double f : f0s) mean += f;
        mean /= static_cast<double>(f0s.size());
        double var = 0.0;
        for (double f : f0s) var += (f - mean) * (f - mean);
        const double sd = std::sqrt(var / static_cast<double>(f0s.size()));
        sum += sd / mean;
        ++windows;
    }
    if (windows == 0)
        throw InsufficientDataError("pvq: no window with ten or more voiced frames");
    return sum / windows;
}

} // namespace lvq
