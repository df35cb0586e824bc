// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "lvq/fft.hpp"
#include "lvq/framing.hpp"
#include "lvq/types.hpp"

namespace lvq {

// Triangular Mel filterbank over 0..8 kHz (capped at Nyquist).
struct MelFilterbank {
    std::vector<std::vector<std::pair<int, double>>> bands; // (bin, weight) per band

    std::vector<double> apply(const std::vector<double>& power_spectrum) const {
        std::vector<double> out(bands.size(), 0.0);
        for (std::size_t b = 0; b < bands.size(); ++b)
            for (const auto& [bin, w] : bands[b])
                out[b] += w * power_spectrum[bin];
        return out;
    }
};

inline double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
inline double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

inline MelFilterbank make_mel_filterbank(int sample_rate, std::size_t nfft, int n_bands = 26,
                                         double f_limit = 8000.0) {
    const double fmax = std::min(f_limit, sample_rate / 2.0);
    std::vector<double> edges(n_bands + 2);
    for (int j = 0; j < n_bands + 2; ++j)
        edges[j] = mel_to_hz(hz_to_mel(fmax) * j / (n_bands + 1));

    MelFilterbank fb;
    fb.bands.resize(n_bands);
    const double bin_hz = static_cast<double>(sample_rate) / static_cast<double>(nfft);
    for (int b = 0; b < n_bands; ++b) {
        const double lo = edges[b], mid = edges[b + 1], hi = edges[b + 2];
        for (int k = 0; k <= static_cast<int>(nfft / 2); ++k) {
            const double f = k * bin_hz;
            double w = 0.0;
            if (f > lo && f < mid) w = (f - lo) / (mid - lo);
            else if (f >= mid && f < hi) w = (hi - f) / (hi - mid);
            if (w > 0.0) fb.bands[b].emplace_back(k, w);
        }
    }
    return fb;
}

// Perceptual loudness of one frame given its Mel band powers: cube-root-like
// compression per band, summed.
inline double loudness_from_band_powers(const std::vector<double>& band_powers) {
    double total = 0.0;
    for (double p : band_powers)
        if (p > 0.0) total += std::pow(p, 0.33);
    return total;
}

// RASTA band-pass filter along a per-band time series:
//   y[t] = 0.1 * (2 x[t] + x[t-1] - x[t-3] - 2 x[t-4]) + 0.98 y[t-1]
// The FIR history is primed with x[0] so a constant series maps to all zeros
// from the first output sample.
inline std::vector<double> rasta_filter(const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    if (x.empty()) return y;
    auto at = [&x](long i) { return x[static_cast<std::size_t>(std::max<long>(i, 0))]; };
    double prev = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        const long i = static_cast<long>(t);
        // Differences first, so a constant signal cancels to exactly zero.
        const double fir =
            0.1 * (2.0 * (at(i) - at(i - 4)) + (at(i - 1) - at(i - 3)));
        y[t] = fir + 0.98 * prev;
        prev = y[t];
    }
    return y;
}

// Extrema ratio of a magnitude spectrum: mean of local minima over mean of
// local maxima (strict comparisons, endpoints included). 0 when undefined.
inline double harmonicity_of_spectrum(const std::vector<double>& mag) {
    if (mag.size() < 2) return 0.0;
    double min_sum = 0.0, max_sum = 0.0;
    std::size_t min_n = 0, max_n = 0;
    for (std::size_t i = 0; i < mag.size(); ++i) {
        const bool gt_left = i == 0 || mag[i] > mag[i - 1];
        const bool gt_right = i + 1 == mag.size() || mag[i] > mag[i + 1];
        const bool lt_left = i == 0 || mag[i] < mag[i - 1];
        const bool lt_right = i + 1 == mag.size() || mag[i] < mag[i + 1];
        if (gt_left && gt_right) {
            max_sum += mag[i];
            ++max_n;
        } else if (lt_left && lt_right) {
            min_sum += mag[i];
            ++min_n;
        }
    }
    if (max_n == 0 || min_n == 0) return 0.0;
    const double max_mean = max_sum / max_n;
    if (max_mean <= 0.0) return 0.0;
    return (min_sum / min_n) / max_mean;
}

namespace detail {

inline std::vector<double> frame_band_powers(const std::vector<float>& samples,
                                             const FramePlan& plan, int frame,
                                             const std::vector<double>& window, std::size_t nfft,
                                             const MelFilterbank& fb) {
    std::vector<double> buf;
    windowed_frame(samples, plan, frame, window, buf);
    std::vector<double> mag = magnitude_spectrum(buf, nfft);
    for (double& m : mag) m *= m; // power spectrum
    return fb.apply(mag);
}

} // namespace detail

// Frame-wise perceptual loudness.
inline Contour loudness_contour(const AudioTrack& track, const FrameConfig& cfg = {}) {
    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, cfg);
    const std::vector<double> window = hamming_window(plan.frame_samples);
    const std::size_t nfft = next_pow2(plan.frame_samples);
    const MelFilterbank fb = make_mel_filterbank(track.sample_rate, nfft);

    Contour c;
    c.kind = ContourKind::loudness;
    c.hop = plan.hop_seconds;
    c.value.resize(plan.count);
    for (int i = 0; i < plan.count; ++i)
        c.value[i] =
            loudness_from_band_powers(detail::frame_band_powers(track.samples, plan, i, window, nfft, fb));
    return c;
}

// Frame-wise modulation of loudness: RASTA-filtered log Mel band powers,
// mapped out of the log domain with the same compression and rectified, so a
// steady spectrum and silence both sit at zero. The first four frames carry
// the filter transient and are tagged as warm-up.
inline Contour modulated_loudness_contour(const AudioTrack& track, const FrameConfig& cfg = {}) {
    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, cfg);
    const std::vector<double> window = hamming_window(plan.frame_samples);
    const std::size_t nfft = next_pow2(plan.frame_samples);
    const MelFilterbank fb = make_mel_filterbank(track.sample_rate, nfft);
    constexpr double kLogFloor = 1e-12;

    const int n_bands = static_cast<int>(fb.bands.size());
    std::vector<std::vector<double>> logs(n_bands, std::vector<double>(plan.count, 0.0));
    for (int i = 0; i < plan.count; ++i) {
        const std::vector<double> powers =
            detail::frame_band_powers(track.samples, plan, i, window, nfft, fb);
        for (int b = 0; b < n_bands; ++b) logs[b][i] = std::log(std::max(powers[b], kLogFloor));
    }

    Contour c;
    c.kind = ContourKind::modulated_loudness;
    c.hop = plan.hop_seconds;
    c.warmup_frames = std::min(4, plan.count);
    c.value.assign(plan.count, 0.0);
    for (int b = 0; b < n_bands; ++b) {
        const std::vector<double> filtered = rasta_filter(logs[b]);
        for (int i = 0; i < plan.count; ++i)
            c.value[i] += std::abs(std::exp(0.33 * filtered[i]) - 1.0);
    }
    return c;
}

// Frame-wise RMS of the raw (unwindowed) samples.
inline Contour rms_energy_contour(const AudioTrack& track, const FrameConfig& cfg = {}) {
    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, cfg);
    Contour c;
    c.kind = ContourKind::rms_energy;
    c.hop = plan.hop_seconds;
    c.value.resize(plan.count);
    for (int i = 0; i < plan.count; ++i) {
        const std::size_t s = plan.start(i);
        double acc = 0.0;
        for (int t = 0; t < plan.frame_samples; ++t) {
            const double v = track.samples[s + t];
            acc += v * v;
        }
        c.value[i] = std::sqrt(acc / plan.frame_samples);
    }
    return c;
}

// Frame-wise spectral extrema ratio over a lightly smoothed magnitude
// spectrum (3-point moving average).
inline Contour harmonicity_contour(const AudioTrack& track, const FrameConfig& cfg = {}) {
    const FramePlan plan = plan_frames(track.samples.size(), track.sample_rate, cfg);
    const std::vector<double> window = hamming_window(plan.frame_samples);
    const std::size_t nfft = next_pow2(plan.frame_samples);

    Contour c;
    c.kind = ContourKind::harmonicity;
    c.hop = plan.hop_seconds;
    c.value.resize(plan.count);
    std::vector<double> buf;
    for (int i = 0; i < plan.count; ++i) {
        windowed_frame(track.samples, plan, i, window, buf);
        const std::vector<double> mag = magnitude_spectrum(buf, nfft);
        std::vector<double> smooth(mag.size());
        for (std::size_t k = 0; k < mag.size(); ++k) {
            double acc = mag[k];
            int n = 1;
            if (k > 0) {
                acc += mag[k - 1];
                ++n;
            }
            if (k + 1 < mag.size()) {
                acc += mag[k + 1];
                ++n;
            }
            smooth[k] = acc / n;
        }
        c.value[i] = harmonicity_of_spectrum(smooth);
    }
    return c;
}

} // namespace lvq
