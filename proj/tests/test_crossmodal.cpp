// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "lvq/crossmodal.hpp"
#include "lvq/lexicon.hpp"

using namespace lvq;

namespace {

Transcript cue_list(std::initializer_list<Cue> cues) {
    Transcript t;
    t.cues = cues;
    return t;
}

Lexicon mini() {
    return Lexicon::parse(
        "[LEMMAS]\nteam\tteams\ncommunication\tcommunications\nmeeting\tmeetings\n"
        "[NOUNS]\nteam\ncommunication\nmeeting\n"
        "[SYNONYMS]\nteam,squad,group\nmeeting,session\n");
}

// Triangle bump of half-width `half` frames added onto `v` with apex at `at`.
void bump(std::vector<double>& v, int at, int half, double height) {
    for (int k = at - half; k <= at + half; ++k)
        if (k >= 0 && k < static_cast<int>(v.size()))
            v[k] += height * (1.0 - std::abs(k - at) / static_cast<double>(half));
}

Contour flat_contour(int frames, double hop, double level) {
    Contour c;
    c.hop = hop;
    c.value.assign(frames, level);
    return c;
}

} // namespace

TEST_CASE("blocking: ten-second blocks tile the transcript span") {
    Transcript tr = cue_list({{0.0, 10.0, "a b c d"}, {12.0, 18.0, "e f"}});
    std::vector<TranscriptBlock> blocks = block_transcript(tr);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].start == 0.0);
    CHECK(blocks[1].end == 20.0);
    REQUIRE(blocks[0].words == std::vector<std::string>{"a", "b", "c", "d"});
    CHECK(blocks[0].times[0] == Catch::Approx(1.25)); // (0+0.5)*10/4
    CHECK(blocks[0].times[3] == Catch::Approx(8.75));
    REQUIRE(blocks[1].words == std::vector<std::string>{"e", "f"});
    CHECK(blocks[1].times[0] == Catch::Approx(13.5));

    CHECK_THROWS_AS(block_transcript(Transcript{}), ValidationError);
}

TEST_CASE("blocking: a straddling cue splits by word midpoints") {
    Transcript tr = cue_list({{8.0, 12.0, "x y"}});
    std::vector<TranscriptBlock> blocks = block_transcript(tr);
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0].words == std::vector<std::string>{"x"}); // midpoint 9
    CHECK(blocks[1].words == std::vector<std::string>{"y"}); // midpoint 11
}

TEST_CASE("words said: partial blocks contribute a rounded proportional cut") {
    Transcript tr = cue_list({{0.0, 10.0, "w0 w1 w2 w3 w4 w5 w6 w7 w8 w9"}});
    std::vector<TranscriptBlock> blocks = block_transcript(tr);

    std::vector<std::string> head = words_said(blocks, 0.0, 7.0);
    REQUIRE(head.size() == 7);
    CHECK(head.front() == "w0");
    CHECK(head.back() == "w6");

    std::vector<std::string> tail = words_said(blocks, 7.0, 10.0);
    REQUIRE(tail.size() == 3);
    CHECK(tail.front() == "w7");

    CHECK_THROWS_AS(words_said(blocks, 5.0, 5.0), ValidationError);
}

TEST_CASE("words said: any cut point conserves the total word count") {
    Transcript tr = cue_list(
        {{0.0, 9.0, "a b c d e f g"}, {9.5, 14.0, "h i j"}, {15.0, 23.0, "k l m n o"}});
    std::vector<TranscriptBlock> blocks = block_transcript(tr);
    std::size_t total = 0;
    for (const auto& b : blocks) total += b.words.size();
    REQUIRE(total == 15);

    for (double cut : {0.0, 0.37, 2.5, 7.77, 9.99, 10.0, 13.21, 18.6, 22.999}) {
        std::size_t lo = cut > 0.0 ? words_said(blocks, 0.0, cut).size() : 0;
        std::size_t hi = cut < 23.0 ? words_said(blocks, cut, 30.0).size() : 0;
        CHECK(lo + hi == total);
    }
}

TEST_CASE("emphasis: pitch, loudness, and energy peaks must agree in time") {
    const int frames = 300;
    const double hop = 0.1;
    PitchTrack pitch;
    pitch.hop = hop;
    pitch.f0.assign(frames, 0.0);
    pitch.voiced.assign(frames, false);
    for (int k = 25; k <= 35; ++k) {
        pitch.f0[k] = 160.0 - 2.0 * std::abs(k - 30);
        pitch.voiced[k] = true;
    }
    Contour loud = flat_contour(frames, hop, 1.0);
    bump(loud.value, 33, 5, 4.0);
    Contour energy = flat_contour(frames, hop, 0.2);
    bump(energy.value, 28, 5, 1.0);

    std::vector<EmphasisEvent> events = detect_emphasis(pitch, loud, energy, 0.0, 10.0);
    REQUIRE(events.size() == 1);
    CHECK(events[0].f0_time == Catch::Approx(3.0));
    CHECK(events[0].loudness_time == Catch::Approx(3.3));
    CHECK(events[0].energy_time == Catch::Approx(2.8));
    CHECK(events[0].time == Catch::Approx((3.0 + 3.3 + 2.8) / 3.0));

    // Beyond the window nothing fires.
    CHECK(detect_emphasis(pitch, loud, energy, 10.0, 20.0).empty());

    Contour wrong_hop = flat_contour(frames, 0.05, 1.0);
    CHECK_THROWS_AS(detect_emphasis(pitch, wrong_hop, energy, 0.0, 10.0), ValidationError);
}

TEST_CASE("emphasis: events at a tight tolerance are a subset of a loose one") {
    const int frames = 100;
    const double hop = 0.1;
    PitchTrack pitch;
    pitch.hop = hop;
    pitch.f0.assign(frames, 0.0);
    pitch.voiced.assign(frames, false);
    for (int k = 25; k <= 35; ++k) {
        pitch.f0[k] = 160.0 - 2.0 * std::abs(k - 30);
        pitch.voiced[k] = true;
    }
    for (int k = 65; k <= 75; ++k) {
        pitch.f0[k] = 170.0 - 2.0 * std::abs(k - 70);
        pitch.voiced[k] = true;
    }
    Contour loud = flat_contour(frames, hop, 1.0);
    bump(loud.value, 33, 5, 4.0);
    bump(loud.value, 84, 5, 4.0);
    Contour energy = flat_contour(frames, hop, 0.2);
    bump(energy.value, 28, 5, 1.0);
    bump(energy.value, 71, 5, 1.0);

    std::vector<EmphasisEvent> loose = detect_emphasis(pitch, loud, energy, 0.0, 10.0, 1.0);
    std::vector<EmphasisEvent> tight = detect_emphasis(pitch, loud, energy, 0.0, 10.0, 0.5);
    REQUIRE(loose.size() == 2);  // second triple deviates by 0.9 at most
    REQUIRE(tight.size() == 1);  // ... which exceeds the tight tolerance
    std::set<double> loose_f0;
    for (const auto& e : loose) loose_f0.insert(e.f0_time);
    for (const auto& e : tight) CHECK(loose_f0.count(e.f0_time) == 1);
}

TEST_CASE("crossmodal features: a hand-checkable three-slide video") {
    const int frames = 300;
    const double hop = 0.1;
    PitchTrack pitch;
    pitch.hop = hop;
    pitch.f0.assign(frames, 0.0);
    pitch.voiced.assign(frames, false);
    for (int k = 25; k <= 35; ++k) {
        pitch.f0[k] = 160.0 - 2.0 * std::abs(k - 30);
        pitch.voiced[k] = true;
    }
    Contour loud = flat_contour(frames, hop, 1.0);
    bump(loud.value, 33, 5, 4.0);
    Contour energy = flat_contour(frames, hop, 0.2);
    bump(energy.value, 28, 5, 1.0);

    Transcript tr = cue_list({{0.0, 10.0, "the team meets"},
                              {10.0, 20.0, "we discuss communication"},
                              {20.0, 30.0, "final meeting summary"}});

    std::vector<SlideLayout> slides(3);
    const char* titles[3] = {"Team Plans", "Communication", "Meeting"};
    for (int i = 0; i < 3; ++i) {
        slides[i].slide_index = i + 1;
        slides[i].width = 100;
        slides[i].height = 100;
        slides[i].text.push_back({10, 10, 80, 20, titles[i]});
    }
    SlideTiming timing;
    timing.intervals = {{1, 0.0, 10.0}, {2, 10.0, 20.0}, {3, 20.0, 30.0}};

    CrossmodalFeatures f =
        crossmodal_features(pitch, loud, energy, tr, slides, timing, mini());

    // St = {team,squad,group} + {communication} + {meeting,session}.
    CHECK(f.slide_term_count == 6);
    // One event in slide 1 -> block 0 -> lemmas {the, team, meet}.
    CHECK(f.emphasis_event_count == 1);
    CHECK(f.emphasized_term_count == 3);
    REQUIRE(f.highlight.has_value());
    CHECK(*f.highlight == Catch::Approx(1.0 / 6.0).epsilon(1e-12));

    // Detailing: 3 words said per slide over 2, 1, 1 slide words.
    REQUIRE(f.detailing_avg.has_value());
    CHECK(*f.detailing_avg == Catch::Approx((1.5 + 3.0 + 3.0) / 3.0).epsilon(1e-12));
    CHECK(*f.detailing_var == Catch::Approx(0.75).epsilon(1e-9));

    // Coverage: slide lemma hits 1/2, 1/1, 1/1.
    REQUIRE(f.coverage_avg.has_value());
    CHECK(*f.coverage_avg == Catch::Approx((0.5 + 1.0 + 1.0) / 3.0).epsilon(1e-12));
    CHECK(*f.coverage_var == Catch::Approx((std::pow(0.5 - 5.0 / 6, 2) * 1 +
                                            std::pow(1.0 - 5.0 / 6, 2) * 2) /
                                           2.0)
                                 .epsilon(1e-9));

    REQUIRE(f.per_slide.size() == 3);
    CHECK(f.per_slide[0].emphasis_events == 1);
    CHECK(f.per_slide[1].emphasis_events == 0);
    CHECK(f.per_slide[0].words_said_count == 3);
    CHECK(f.per_slide[0].slide_word_count == 2);
    CHECK(f.per_slide[0].detailing.has_value());
    CHECK(*f.per_slide[0].coverage == Catch::Approx(0.5));
}

TEST_CASE("crossmodal features: absence paths") {
    PitchTrack pitch;
    pitch.hop = 0.1;
    pitch.f0.assign(100, 0.0);
    pitch.voiced.assign(100, false);
    Contour loud = flat_contour(100, 0.1, 1.0);
    Contour energy = flat_contour(100, 0.1, 0.2);
    Transcript tr = cue_list({{0.0, 5.0, "hello world"}});
    std::vector<SlideLayout> slides(1);
    slides[0].slide_index = 1;
    slides[0].width = 100;
    slides[0].height = 100;

    SlideTiming none;
    CrossmodalFeatures a =
        crossmodal_features(pitch, loud, energy, tr, slides, none, mini());
    CHECK_FALSE(a.highlight.has_value());
    CHECK(a.absent.count("highlight_of_text") == 1);
    CHECK(a.absent.count("detailing") == 1);
    CHECK(a.absent.count("coverage") == 1);

    SlideTiming timing;
    timing.intervals = {{1, 0.0, 10.0}};
    CrossmodalFeatures b =
        crossmodal_features(pitch, loud, energy, Transcript{}, slides, timing, mini());
    CHECK(b.absent.count("highlight_of_text") == 1);

    // Slide with no text: detailing and coverage have no denominator.
    CrossmodalFeatures c =
        crossmodal_features(pitch, loud, energy, tr, slides, timing, mini());
    CHECK_FALSE(c.detailing_avg.has_value());
    CHECK_FALSE(c.coverage_avg.has_value());
    CHECK(c.absent.count("detailing") == 1);
    CHECK(c.absent.count("coverage") == 1);
    CHECK(c.absent.count("highlight_of_text") == 1); // no important text either

    SlideTiming missing;
    missing.intervals = {{7, 0.0, 10.0}};
    CHECK_THROWS_AS(crossmodal_features(pitch, loud, energy, tr, slides, missing, mini()),
                    ValidationError);
}
