// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "lvq/pitch.hpp"
#include "lvq/syllables.hpp"

using namespace lvq;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// 200 Hz carrier whose amplitude follows a piecewise-constant envelope;
// at 16 kHz every analysis frame covers whole carrier cycles, so frames
// inside one step have identical RMS.
AudioTrack stepped(const std::vector<std::pair<double, double>>& steps, int rate = 16000) {
    AudioTrack t;
    t.sample_rate = rate;
    for (const auto& [seconds, amp] : steps) {
        const std::size_t n = static_cast<std::size_t>(seconds * rate);
        const std::size_t base = t.samples.size();
        for (std::size_t i = 0; i < n; ++i)
            t.samples.push_back(
                static_cast<float>(amp * std::sin(kTau * 200.0 * (base + i) / rate)));
    }
    return t;
}

AudioTrack bursts(int count, double period = 0.5, double width = 0.2, int rate = 16000) {
    AudioTrack t;
    t.sample_rate = rate;
    const double total = count * period;
    const std::size_t n = static_cast<std::size_t>(total * rate);
    t.samples.assign(n, 0.0f);
    for (int k = 0; k < count; ++k) {
        const double center = (k + 0.5) * period;
        const std::size_t b = static_cast<std::size_t>((center - width / 2) * rate);
        const std::size_t e = static_cast<std::size_t>((center + width / 2) * rate);
        for (std::size_t i = b; i < e && i < n; ++i) {
            const double u = (static_cast<double>(i) - b) / (static_cast<double>(e) - b);
            const double env = 0.5 * (1.0 - std::cos(kTau * u));
            t.samples[i] = static_cast<float>(0.5 * env * std::sin(kTau * 200.0 * i / rate));
        }
    }
    return t;
}

} // namespace

TEST_CASE("syllables: one nucleus per isolated burst") {
    AudioTrack t = bursts(10);
    PitchTrack p = estimate_pitch(t);
    SyllableTrack syl = detect_syllables(t, p);
    REQUIRE(syl.nuclei.size() == 10);
    for (int k = 0; k < 10; ++k)
        CHECK(syl.nuclei[k] == Catch::Approx((k + 0.5) * 0.5).margin(0.05));
    CHECK(syl.total_seconds == Catch::Approx(5.0));
    CHECK(syl.phonation_seconds > 0.0);
    CHECK(syl.phonation_seconds < syl.total_seconds);
}

TEST_CASE("syllables: a shallow dip between peaks merges them") {
    // 0.5 -> 0.45 is a 0.9 dB valley: second peak rejected.
    AudioTrack shallow = stepped({{0.2, 0.0}, {0.3, 0.5}, {0.3, 0.45}, {0.3, 0.5}});
    PitchTrack p1 = estimate_pitch(shallow);
    CHECK(detect_syllables(shallow, p1).nuclei.size() == 1);

    // 0.5 -> 0.2 is an 8 dB valley: both peaks stand.
    AudioTrack deep = stepped({{0.2, 0.0}, {0.3, 0.5}, {0.3, 0.2}, {0.3, 0.5}});
    PitchTrack p2 = estimate_pitch(deep);
    CHECK(detect_syllables(deep, p2).nuclei.size() == 2);
}

TEST_CASE("syllables: a peak needs a preceding dip, even at the track start") {
    AudioTrack level = stepped({{0.6, 0.5}});
    PitchTrack p = estimate_pitch(level);
    CHECK(detect_syllables(level, p).nuclei.empty());
}

TEST_CASE("syllables: unvoiced peaks do not count") {
    AudioTrack t = bursts(5);
    PitchTrack p = estimate_pitch(t);
    SyllableTrack with_voice = detect_syllables(t, p);
    REQUIRE(with_voice.nuclei.size() == 5);
    for (std::size_t i = 0; i < p.size(); ++i) p.voiced[i] = false;
    SyllableTrack muted = detect_syllables(t, p);
    CHECK(muted.nuclei.empty());
}

TEST_CASE("speech rates: identities between the three derived rates") {
    AudioTrack t = bursts(10);
    PitchTrack p = estimate_pitch(t);
    SyllableTrack syl = detect_syllables(t, p);
    SpeechRates r = speech_rates(syl);
    CHECK(r.speech_rate == Catch::Approx(10.0 / 5.0).epsilon(1e-12));
    CHECK(r.articulation_rate ==
          Catch::Approx(10.0 / syl.phonation_seconds).epsilon(1e-12));
    CHECK(r.avg_syllable_duration * r.articulation_rate == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(r.articulation_rate > r.speech_rate); // phonation < total duration
}

TEST_CASE("speech rates: silence provides nothing to measure") {
    AudioTrack z;
    z.sample_rate = 16000;
    z.samples.assign(32000, 0.0f);
    PitchTrack p = estimate_pitch(z);
    SyllableTrack syl = detect_syllables(z, p);
    CHECK(syl.nuclei.empty());
    CHECK_THROWS_AS(speech_rates(syl), InsufficientDataError);
}
