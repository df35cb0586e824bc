// SPDX-License-Identifier: Apache-2.0
//
// lvq-mkfixture: writes a small, fully deterministic demo video directory
// (synthesized narration, transcript, slide layout, timing, lexicon) used by
// the end-to-end tests and handy for trying the extract pipeline.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "lvq/layout_io.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"
#include "lvq/wav.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kSampleRate = 16000;
constexpr double kDuration = 64.0;
constexpr double kSegment = 12.5; // one slide per segment, five slides
constexpr double kCueOffsets[4][2] = {{0.2, 3.0}, {3.2, 6.0}, {6.4, 9.2}, {9.4, 12.2}};

const char* kCueWords[5][4] = {
    {"the team communication plan", "our squad shares updates daily",
     "meetings keep the group aligned", "deadlines drive the schedule"},
    {"each module exposes an interface", "components connect through services",
     "the system grows by design", "patterns guide the structure"},
    {"risk management needs attention", "defects raise the cost",
     "errors surface during reviews", "the budget covers mitigation"},
    {"quality testing starts early", "tests cover every requirement",
     "automation speeds the process", "faults block the release"},
    {"the architecture review closes", "diagrams explain the components",
     "the customer approves the goal", "objectives match the outcome"},
};

const char* kTitles[5] = {"Team Communication", "Module Interfaces", "Risk Management",
                          "Quality Testing", "Architecture Review"};

const char* kBodies[5][3] = {
    {"daily updates for the squad", "meetings and schedules", "deadlines and goals"},
    {"components and services", "system design patterns", "structure of the codebase"},
    {"defects and errors", "budget and mitigation", "reviews reduce cost"},
    {"tests and requirements", "automation of the process", "release criteria"},
    {"diagrams and components", "customer goals", "objectives and outcomes"},
};

const char* kFooters[5] = {"page one", "page two", "page three", "page four", "page five"};

const char* kLexicon = R"([LEMMAS]
team	teams
squad	squads
group	groups
communication	communications
plan	plans
update	updates
meeting	meetings
schedule	schedules
deadline	deadlines
goal	goals
objective	objectives
module	modules
interface	interfaces
component	components
service	services
system	systems
design	designs
pattern	patterns
structure	structures
codebase	codebases
risk	risks
management	managements
attention	attentions
defect	defects
cost	costs
error	errors
review	reviews
budget	budgets
mitigation	mitigations
quality	qualities
test	tests
requirement	requirements
automation	automations
process	processes
fault	faults
release	releases
architecture	architectures
diagram	diagrams
customer	customers
outcome	outcomes
criterion	criteria

[NOUNS]
team
squad
group
communication
plan
update
meeting
schedule
deadline
goal
objective
module
interface
component
service
system
design
pattern
structure
codebase
risk
management
attention
defect
cost
error
review
budget
mitigation
quality
test
requirement
automation
process
fault
release
architecture
diagram
customer
outcome
criterion

[SYNONYMS]
team,squad,group
goal,objective
error,fault,defect
)";

bool in_speech(double t) {
    for (int seg = 0; seg < 5; ++seg)
        for (const auto& off : kCueOffsets) {
            const double a = seg * kSegment + off[0];
            const double b = seg * kSegment + off[1];
            if (t >= a && t < b) return true;
        }
    return false;
}

double emphasis_bump(double t) {
    double bump = 0.0;
    for (int seg = 0; seg < 5; ++seg) {
        const double c = seg * kSegment + kSegment / 2.0;
        const double d = (t - c) / 0.5;
        bump += std::exp(-d * d);
    }
    return bump;
}

std::vector<float> synthesize() {
    const std::size_t n = static_cast<std::size_t>(kDuration * kSampleRate);
    std::vector<float> samples(n, 0.0f);
    constexpr double tau = 2.0 * std::numbers::pi;
    const double amp[5] = {1.0, 0.5, 0.33, 0.25, 0.2};
    const double psi[5] = {0.0, 1.1, 2.3, 0.4, 1.9};
    double phase = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / kSampleRate;
        const double bump = emphasis_bump(t);
        const double f0 = 150.0 + 22.0 * std::sin(tau * 0.31 * t + 0.7) +
                          10.0 * std::sin(tau * 0.043 * t) + 45.0 * bump;
        phase += tau * f0 / kSampleRate;
        if (!in_speech(t)) continue;

        // One syllable burst per 250 ms riding on a soft floor.
        const double u = t * 4.0 - std::floor(t * 4.0);
        const double burst = 0.25 + 0.75 * 0.5 * (1.0 - std::cos(tau * u));
        const double am = 1.0 + 0.09 * std::sin(tau * 2.7 * t + 1.3);
        double wave = 0.0;
        for (int k = 0; k < 5; ++k) wave += amp[k] * std::sin((k + 1) * phase + psi[k]);
        samples[i] = static_cast<float>(0.30 * am * (1.0 + 0.8 * bump) * burst * wave / 2.28);
    }
    return samples;
}

std::string srt_time(double seconds) {
    const long ms = std::lround(seconds * 1000.0);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%02ld:%02ld:%02ld,%03ld", ms / 3600000,
                  (ms / 60000) % 60, (ms / 1000) % 60, ms % 1000);
    return buf;
}

std::string make_srt() {
    std::string out;
    int index = 1;
    for (int seg = 0; seg < 5; ++seg) {
        for (int c = 0; c < 4; ++c) {
            const double a = seg * kSegment + kCueOffsets[c][0];
            const double b = seg * kSegment + kCueOffsets[c][1];
            out += std::to_string(index++) + "\n";
            out += srt_time(a) + " --> " + srt_time(b) + "\n";
            out += std::string(kCueWords[seg][c]) + "\n\n";
        }
    }
    return out;
}

void add_text_line(lvq::SlideLayout& slide, const std::string& text, double y, double h,
                   double char_w) {
    double x = 60.0;
    for (const std::string& word : lvq::split(text, ' ')) {
        if (word.empty()) continue;
        const double w = char_w * static_cast<double>(word.size());
        slide.text.push_back({x, y, w, h, word});
        x += w + 0.6 * char_w;
    }
}

std::vector<lvq::SlideLayout> make_slides() {
    std::vector<lvq::SlideLayout> slides;
    for (int i = 0; i < 5; ++i) {
        lvq::SlideLayout s;
        s.slide_index = i + 1;
        s.width = 960.0;
        s.height = 540.0;
        add_text_line(s, kTitles[i], 40.0, 46.0, 26.0);
        for (int line = 0; line < 3; ++line)
            add_text_line(s, kBodies[i][line], 150.0 + 40.0 * line, 24.0, 13.0);
        add_text_line(s, kFooters[i], 510.0, 10.0, 7.0);
        slides.push_back(std::move(s));
    }
    slides[1].images.push_back({560.0, 180.0, 300.0, 200.0});
    slides[2].images.push_back({520.0, 150.0, 180.0, 140.0});
    slides[2].images.push_back({720.0, 150.0, 180.0, 140.0});
    slides[3].images.push_back({480.0, 160.0, 420.0, 260.0});
    return slides;
}

std::string make_timing() {
    std::string out = "slide_index,start_seconds,end_seconds\n";
    for (int i = 0; i < 5; ++i) {
        out += std::to_string(i + 1) + "," + lvq::format_compact(i * kSegment) + "," +
               lvq::format_compact((i + 1) * kSegment) + "\n";
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: lvq-mkfixture <output-dir>\n";
        return 1;
    }
    try {
        const fs::path dir(argv[1]);
        fs::create_directories(dir);
        lvq::save_wav16(dir / "audio.wav", synthesize(), kSampleRate);
        lvq::atomic_write_file(dir / "transcript.srt", make_srt());
        lvq::atomic_write_file(dir / "layout.json", lvq::dump_slide_layouts(make_slides()));
        lvq::atomic_write_file(dir / "timing.csv", make_timing());
        lvq::atomic_write_file(dir / "lexicon.txt", kLexicon);
        std::cout << "fixture written to " << dir.string() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
