// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvq/audio_features.hpp"
#include "lvq/crossmodal.hpp"
#include "lvq/error.hpp"
#include "lvq/feature_vector.hpp"
#include "lvq/lexicon.hpp"
#include "lvq/slide_metrics.hpp"
#include "lvq/stats.hpp"
#include "lvq/syllables.hpp"
#include "lvq/tables_io.hpp"
#include "lvq/types.hpp"
#include "lvq/util.hpp"

namespace lvq {

// Every knob of the extraction pipeline, with the defaults used throughout.
struct PipelineConfig {
    double frame_length = 0.025;
    double hop = 0.010;
    double f0_min = 50.0;
    double f0_max = 500.0;
    double voicing_threshold = 0.45;
    double silence_ratio = 0.01;
    double pvq_window_seconds = 10.0;
    double syllable_silence_db = 25.0;
    double syllable_dip_db = 2.0;
    double block_seconds = 10.0;
    double emphasis_tolerance_seconds = 1.0;
    double cluster_gap_ratio = 0.01;
    std::string lexicon_path;

    FrameConfig frame() const { return {frame_length, hop, Window::hamming}; }
    PitchConfig pitch() const { return {f0_min, f0_max, voicing_threshold, silence_ratio}; }
    SyllableConfig syllable() const { return {syllable_silence_db, syllable_dip_db}; }
    CrossmodalConfig cross() const {
        return {block_seconds, emphasis_tolerance_seconds, cluster_gap_ratio};
    }

    void validate() const {
        auto bad = [](const std::string& msg) { throw ConfigurationError(msg); };
        if (!(frame_length > 0)) bad("frame_length must be positive");
        if (!(hop > 0)) bad("hop must be positive");
        if (hop > frame_length) bad("hop must not exceed frame_length");
        if (!(f0_min > 0) || !(f0_max > f0_min)) bad("need 0 < f0_min < f0_max");
        if (voicing_threshold < 0 || voicing_threshold > 1)
            bad("voicing_threshold must be in [0, 1]");
        if (silence_ratio < 0 || silence_ratio >= 1) bad("silence_ratio must be in [0, 1)");
        if (!(pvq_window_seconds > 0)) bad("pvq_window_seconds must be positive");
        if (!(syllable_silence_db > 0)) bad("syllable_silence_db must be positive");
        if (!(syllable_dip_db > 0)) bad("syllable_dip_db must be positive");
        if (!(block_seconds > 0)) bad("block_seconds must be positive");
        if (!(emphasis_tolerance_seconds > 0)) bad("emphasis_tolerance_seconds must be positive");
        if (!(cluster_gap_ratio > 0)) bad("cluster_gap_ratio must be positive");
    }
};

namespace detail {

inline const std::map<std::string, double PipelineConfig::*>& config_keys() {
    static const std::map<std::string, double PipelineConfig::*> keys = {
        {"frame_length", &PipelineConfig::frame_length},
        {"hop", &PipelineConfig::hop},
        {"f0_min", &PipelineConfig::f0_min},
        {"f0_max", &PipelineConfig::f0_max},
        {"voicing_threshold", &PipelineConfig::voicing_threshold},
        {"silence_ratio", &PipelineConfig::silence_ratio},
        {"pvq_window_seconds", &PipelineConfig::pvq_window_seconds},
        {"syllable_silence_db", &PipelineConfig::syllable_silence_db},
        {"syllable_dip_db", &PipelineConfig::syllable_dip_db},
        {"block_seconds", &PipelineConfig::block_seconds},
        {"emphasis_tolerance_seconds", &PipelineConfig::emphasis_tolerance_seconds},
        {"cluster_gap_ratio", &PipelineConfig::cluster_gap_ratio},
    };
    return keys;
}

} // namespace detail

// key=value lines; '#' starts a comment. Unknown keys are rejected so typos
// cannot silently fall back to defaults.
inline PipelineConfig parse_config(const std::string& text) {
    PipelineConfig cfg;
    int lineno = 0;
    std::string cur;
    auto handle = [&](const std::string& raw) {
        const std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) return;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigurationError("config line " + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "lexicon_path") {
            cfg.lexicon_path = value;
            return;
        }
        const auto& keys = detail::config_keys();
        const auto it = keys.find(key);
        if (it == keys.end())
            throw ConfigurationError("config line " + std::to_string(lineno) + ": unknown key \"" +
                                     key + "\"");
        try {
            cfg.*(it->second) = parse_double(value, "config " + key);
        } catch (const FormatError& e) {
            throw ConfigurationError(e.what());
        }
    };
    for (char c : text) {
        if (c == '\n') {
            ++lineno;
            handle(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    ++lineno;
    handle(cur);
    cfg.validate();
    return cfg;
}

inline nlohmann::ordered_json config_to_json(const PipelineConfig& cfg) {
    nlohmann::ordered_json j;
    j["frame_length"] = cfg.frame_length;
    j["hop"] = cfg.hop;
    j["f0_min"] = cfg.f0_min;
    j["f0_max"] = cfg.f0_max;
    j["voicing_threshold"] = cfg.voicing_threshold;
    j["silence_ratio"] = cfg.silence_ratio;
    j["pvq_window_seconds"] = cfg.pvq_window_seconds;
    j["syllable_silence_db"] = cfg.syllable_silence_db;
    j["syllable_dip_db"] = cfg.syllable_dip_db;
    j["block_seconds"] = cfg.block_seconds;
    j["emphasis_tolerance_seconds"] = cfg.emphasis_tolerance_seconds;
    j["cluster_gap_ratio"] = cfg.cluster_gap_ratio;
    j["lexicon_path"] = cfg.lexicon_path;
    return j;
}

struct VideoInputs {
    AudioTrack audio;
    Transcript transcript;
    std::vector<SlideLayout> slides;
    SlideTiming timing;
};

struct ExtractResult {
    FeatureVector features;
    CrossmodalFeatures cross;
    double duration_seconds = 0.0;
    int frames = 0;
    int voiced_frames = 0;
    std::size_t syllable_count = 0;
    double phonation_seconds = 0.0;
};

// Runs the whole per-video pipeline. Individual features that cannot be
// computed are reported as absent with a reason; hard input violations
// (e.g. a timed slide without a layout) still throw.
inline ExtractResult extract_features(const VideoInputs& in, const Lexicon& lexicon,
                                      const PipelineConfig& cfg = {}) {
    cfg.validate();
    ExtractResult out;
    out.duration_seconds = in.audio.duration_seconds();

    // Timed slides, in timing order; every interval must name a layout.
    std::vector<SlideLayout> timed;
    for (const SlideInterval& iv : in.timing.intervals) {
        bool found = false;
        for (const SlideLayout& s : in.slides)
            if (s.slide_index == iv.slide_index) {
                timed.push_back(s);
                found = true;
                break;
            }
        if (!found)
            throw ValidationError("extract: timed slide " + std::to_string(iv.slide_index) +
                                  " has no layout");
    }

    PitchTrack pitch;
    bool have_pitch = false;
    std::string pitch_reason;
    try {
        pitch = estimate_pitch(in.audio, cfg.frame(), cfg.pitch());
        have_pitch = true;
    } catch (const InsufficientDataError& e) {
        pitch_reason = e.what();
    }

    static constexpr const char* kAudioFields[] = {
        "f0_avg",  "pvq",     "jitter",       "delta_jitter",          "shimmer",
        "log_hnr", "loudness_avg", "modulated_loudness_avg", "rms_energy_avg", "harmonicity_avg"};
    static constexpr const char* kRateFields[] = {"speech_rate", "articulation_rate",
                                                  "avg_syllable_duration"};

    if (have_pitch) {
        out.frames = static_cast<int>(pitch.size());
        for (std::size_t i = 0; i < pitch.size(); ++i)
            if (pitch.voiced[i]) ++out.voiced_frames;

        const AudioFeatureSet afs = audio_feature_set(in.audio, pitch, cfg.frame(), cfg.pvq_window_seconds);
        auto put = [&out, &afs](const char* name, const std::optional<double>& v) {
            if (v) out.features.set(name, *v);
            else out.features.miss(name, afs.absent.count(name) ? afs.absent.at(name) : "unavailable");
        };
        put("f0_avg", afs.f0_avg);
        put("pvq", afs.pvq);
        put("jitter", afs.jitter);
        put("delta_jitter", afs.delta_jitter);
        put("shimmer", afs.shimmer);
        put("log_hnr", afs.log_hnr);
        put("loudness_avg", afs.loudness_avg);
        put("modulated_loudness_avg", afs.modulated_loudness_avg);
        put("rms_energy_avg", afs.rms_energy_avg);
        put("harmonicity_avg", afs.harmonicity_avg);

        try {
            const SyllableTrack syl = detect_syllables(in.audio, pitch, cfg.frame(), cfg.syllable());
            out.syllable_count = syl.nuclei.size();
            out.phonation_seconds = syl.phonation_seconds;
            const SpeechRates rates = speech_rates(syl);
            out.features.set("speech_rate", rates.speech_rate);
            out.features.set("articulation_rate", rates.articulation_rate);
            out.features.set("avg_syllable_duration", rates.avg_syllable_duration);
        } catch (const InsufficientDataError& e) {
            for (const char* f : kRateFields) out.features.miss(f, e.what());
        }
    } else {
        for (const char* f : kAudioFields) out.features.miss(f, pitch_reason);
        for (const char* f : kRateFields) out.features.miss(f, pitch_reason);
    }

    try {
        const SlideRatios ratios = deck_ratios(timed);
        out.features.set("text_ratio_avg", ratios.text_ratio_avg);
        out.features.set("text_ratio_var", ratios.text_ratio_var);
        out.features.set("image_ratio_avg", ratios.image_ratio_avg);
        out.features.set("image_ratio_var", ratios.image_ratio_var);
    } catch (const InsufficientDataError& e) {
        for (const char* f : {"text_ratio_avg", "text_ratio_var", "image_ratio_avg", "image_ratio_var"})
            out.features.miss(f, e.what());
    }

    if (have_pitch) {
        const Contour loud = loudness_contour(in.audio, cfg.frame());
        const Contour energy = rms_energy_contour(in.audio, cfg.frame());
        out.cross = crossmodal_features(pitch, loud, energy, in.transcript, in.slides, in.timing,
                                        lexicon, cfg.cross());
    } else {
        out.cross.absent["highlight_of_text"] = pitch_reason;
        out.cross.absent["detailing"] = pitch_reason;
        out.cross.absent["coverage"] = pitch_reason;
    }
    auto put_cross = [&out](const char* name, const std::optional<double>& v, const char* key) {
        if (v) out.features.set(name, *v);
        else
            out.features.miss(name,
                              out.cross.absent.count(key) ? out.cross.absent.at(key) : "unavailable");
    };
    put_cross("highlight_of_text", out.cross.highlight, "highlight_of_text");
    put_cross("detailing_avg", out.cross.detailing_avg, "detailing");
    put_cross("detailing_var", out.cross.detailing_var, "detailing");
    put_cross("coverage_avg", out.cross.coverage_avg, "coverage");
    put_cross("coverage_var", out.cross.coverage_var, "coverage");
    return out;
}

// Full per-video JSON report: features, absences, diagnostics, and the
// effective configuration.
inline std::string dump_extract_json(const std::string& video_id, const ExtractResult& r,
                                     const PipelineConfig& cfg) {
    nlohmann::ordered_json j;
    j["video_id"] = video_id;
    j["features"] = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
        const std::string name(kFeatureNames[i]);
        if (r.features.values[i]) j["features"][name] = *r.features.values[i];
        else j["features"][name] = nullptr;
    }
    j["absent"] = nlohmann::ordered_json::object();
    for (const auto& [name, reason] : r.features.absent) j["absent"][name] = reason;

    nlohmann::ordered_json diag;
    diag["duration_seconds"] = r.duration_seconds;
    diag["frames"] = r.frames;
    diag["voiced_frames"] = r.voiced_frames;
    diag["syllable_count"] = r.syllable_count;
    diag["phonation_seconds"] = r.phonation_seconds;
    diag["slide_term_count"] = r.cross.slide_term_count;
    diag["emphasized_term_count"] = r.cross.emphasized_term_count;
    diag["emphasis_event_count"] = r.cross.emphasis_event_count;
    diag["per_slide"] = nlohmann::ordered_json::array();
    for (const SlideCrossStats& s : r.cross.per_slide) {
        nlohmann::ordered_json js;
        js["slide_index"] = s.slide_index;
        js["words_said"] = s.words_said_count;
        js["slide_words"] = s.slide_word_count;
        js["emphasis_events"] = s.emphasis_events;
        if (s.detailing) js["detailing"] = *s.detailing;
        if (s.coverage) js["coverage"] = *s.coverage;
        diag["per_slide"].push_back(std::move(js));
    }
    j["diagnostics"] = std::move(diag);
    j["config"] = config_to_json(cfg);
    return j.dump(2) + "\n";
}

struct StudyOutputs {
    std::vector<CorrelationRow> correlations;
    std::vector<KnowledgeGain> gains; // one per video with enough quiz data
    ValueTable features;
    ValueTable aspects;
    ValueTable gain_table;
    std::vector<std::string> warnings;
};

// Aggregates ratings and quiz answers, then correlates every feature with
// every aspect (rank) and with knowledge gain (product-moment).
inline StudyOutputs run_study(const std::vector<std::pair<std::string, FeatureVector>>& features,
                              const std::vector<StudyRecord>& records) {
    StudyOutputs out;

    std::set<std::string> seen;
    for (const auto& [video, fv] : features) {
        if (!seen.insert(video).second)
            throw ValidationError("study: duplicate video id \"" + video + "\" in features");
    }

    out.features.columns.assign(kFeatureNames.begin(), kFeatureNames.end());
    for (const auto& [video, fv] : features) {
        out.features.row_ids.push_back(video);
        out.features.cells.emplace_back(fv.values.begin(), fv.values.end());
    }

    // Mean rating per (video, aspect).
    std::map<std::string, std::map<std::string, std::pair<double, int>>> rating_acc;
    for (const StudyRecord& rec : records) {
        if (!seen.count(rec.video_id)) {
            out.warnings.push_back("ratings/quiz for unknown video \"" + rec.video_id +
                                   "\" ignored");
            continue;
        }
        for (const auto& [aspect, score] : rec.ratings) {
            auto& acc = rating_acc[rec.video_id][aspect];
            acc.first += score;
            acc.second += 1;
        }
    }
    out.aspects.columns.assign(kAspectNames.begin(), kAspectNames.end());
    out.aspects.row_ids = out.features.row_ids;
    for (const std::string& video : out.aspects.row_ids) {
        std::vector<std::optional<double>> row(kAspectNames.size());
        if (auto vit = rating_acc.find(video); vit != rating_acc.end()) {
            for (std::size_t a = 0; a < kAspectNames.size(); ++a) {
                const std::string aspect(kAspectNames[a]);
                if (auto ait = vit->second.find(aspect); ait != vit->second.end())
                    row[a] = ait->second.first / ait->second.second;
            }
        }
        out.aspects.cells.push_back(std::move(row));
    }

    const std::vector<QuizScore> scores = quiz_scores(records);
    out.gain_table.columns = {"knowledge_gain"};
    out.gain_table.row_ids = out.features.row_ids;
    for (const std::string& video : out.gain_table.row_ids) {
        std::optional<double> cell;
        try {
            KnowledgeGain kg = knowledge_gain(scores, video);
            if (kg.degenerate_variance)
                out.warnings.push_back("knowledge gain for \"" + video +
                                       "\" dropped: zero pooled variance");
            else
                cell = kg.value;
            out.gains.push_back(std::move(kg));
        } catch (const InsufficientDataError& e) {
            out.warnings.push_back(std::string(e.what()));
        }
        out.gain_table.cells.push_back({cell});
    }

    out.correlations = correlation_table(out.features, out.aspects, out.gain_table);
    return out;
}

inline std::string dump_correlations_csv(const std::vector<CorrelationRow>& rows) {
    std::string out = "feature,aspect,method,r,n,alpha_bucket\n";
    for (const CorrelationRow& r : rows) {
        out += r.feature;
        out += ',';
        out += r.target;
        out += ',';
        out += r.method == CorrMethod::spearman ? "spearman" : "pearson";
        out += ',';
        if (r.r) out += format_double(*r.r);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += r.bucket;
        out += '\n';
    }
    return out;
}

inline std::string dump_correlations_json(const std::vector<CorrelationRow>& rows) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const CorrelationRow& r : rows) {
        nlohmann::ordered_json jr;
        jr["feature"] = r.feature;
        jr["aspect"] = r.target;
        jr["method"] = r.method == CorrMethod::spearman ? "spearman" : "pearson";
        if (r.r) jr["r"] = *r.r;
        else jr["r"] = nullptr;
        jr["n"] = r.n;
        jr["alpha_bucket"] = r.bucket;
        j.push_back(std::move(jr));
    }
    return j.dump(2) + "\n";
}

inline std::string dump_knowledge_gain_csv(const std::vector<KnowledgeGain>& gains) {
    std::string out =
        "video_id,n,pooled_mean,pooled_stdev,half_mean_raw_gain,knowledge_gain,degenerate_variance\n";
    for (const KnowledgeGain& kg : gains) {
        out += kg.video_id;
        out += ',';
        out += std::to_string(kg.n);
        out += ',';
        out += format_double(kg.pooled_mean);
        out += ',';
        out += format_double(kg.pooled_stdev);
        out += ',';
        out += format_double(kg.half_mean_raw_gain);
        out += ',';
        if (kg.value) out += format_double(*kg.value);
        out += ',';
        out += kg.degenerate_variance ? "true" : "false";
        out += '\n';
    }
    return out;
}

} // namespace lvq
