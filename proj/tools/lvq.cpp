// SPDX-License-Identifier: Apache-2.0
//
// lvq: batch feature extraction from lecture recordings plus the statistics
// used to relate those features to viewer ratings and quiz outcomes.
//
//   lvq extract <video-dir>... [-o out] [--config file] [--jobs N]
//   lvq study --features f.csv --ratings r.csv --quiz q.csv -o outdir
//   lvq convert --xhtml pages.xhtml [--xml images.xml] -o layout.json

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lvq/feature_vector.hpp"
#include "lvq/layout_io.hpp"
#include "lvq/pipeline.hpp"
#include "lvq/srt.hpp"
#include "lvq/svg.hpp"
#include "lvq/tables_io.hpp"
#include "lvq/util.hpp"
#include "lvq/wav.hpp"

namespace fs = std::filesystem;

namespace {

std::string video_id_of(const fs::path& dir) {
    fs::path p = dir;
    if (p.filename().empty()) p = p.parent_path();
    return p.filename().string();
}

// Env var beats config key beats a lexicon.txt next to the video inputs.
lvq::Lexicon resolve_lexicon(const lvq::PipelineConfig& cfg, const fs::path& video_dir) {
    if (const char* env = std::getenv("LVQ_LEXICON"); env != nullptr && *env != '\0')
        return lvq::Lexicon::load(env);
    if (!cfg.lexicon_path.empty()) return lvq::Lexicon::load(cfg.lexicon_path);
    const fs::path local = video_dir / "lexicon.txt";
    if (fs::exists(local)) return lvq::Lexicon::load(local);
    throw lvq::ConfigurationError(
        "no lexicon: set LVQ_LEXICON, config key lexicon_path, or place lexicon.txt in " +
        video_dir.string());
}

lvq::VideoInputs load_video_dir(const fs::path& dir) {
    lvq::VideoInputs in;
    in.audio = lvq::load_wav(dir / "audio.wav");
    in.transcript = lvq::load_srt(dir / "transcript.srt");
    in.slides = lvq::load_slide_layouts(dir / "layout.json");
    in.timing = lvq::load_slide_timing(dir / "timing.csv");
    return in;
}

struct ExtractJob {
    fs::path dir;
    std::string video_id;
    std::optional<lvq::ExtractResult> result;
    std::string error;
};

int run_extract(const std::vector<std::string>& dirs, const std::string& out_arg,
                const std::string& config_path, int jobs) {
    lvq::PipelineConfig cfg;
    if (!config_path.empty()) cfg = lvq::parse_config(lvq::read_file(config_path));

    std::vector<ExtractJob> work;
    for (const std::string& d : dirs) work.push_back({fs::path(d), video_id_of(d), {}, {}});

    const bool single_json = work.size() == 1 && out_arg.size() > 5 &&
                             out_arg.substr(out_arg.size() - 5) == ".json";
    const fs::path out_dir = single_json ? fs::path(out_arg).parent_path() : fs::path(out_arg);
    if (!out_dir.empty()) fs::create_directories(out_dir);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= work.size()) return;
            ExtractJob& job = work[i];
            try {
                const lvq::VideoInputs in = load_video_dir(job.dir);
                const lvq::Lexicon lexicon = resolve_lexicon(cfg, job.dir);
                job.result = lvq::extract_features(in, lexicon, cfg);
                const std::string json =
                    lvq::dump_extract_json(job.video_id, *job.result, cfg);
                const fs::path out_path =
                    single_json ? fs::path(out_arg) : out_dir / (job.video_id + ".json");
                lvq::atomic_write_file(out_path, json);
            } catch (const std::exception& e) {
                job.error = e.what();
            }
        }
    };

    std::vector<std::thread> pool;
    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    bool any_error = false, any_absent = false;
    std::vector<std::pair<std::string, lvq::FeatureVector>> rows;
    for (const ExtractJob& job : work) {
        if (!job.error.empty()) {
            std::cerr << "error: " << job.video_id << ": " << job.error << "\n";
            any_error = true;
            continue;
        }
        const lvq::FeatureVector& fv = job.result->features;
        int present = 0;
        for (const auto& v : fv.values)
            if (v) ++present;
        std::cout << job.video_id << ": " << present << "/" << fv.values.size() << " features\n";
        for (const auto& [name, reason] : fv.absent) {
            std::cerr << job.video_id << ": absent " << name << ": " << reason << "\n";
            any_absent = true;
        }
        rows.emplace_back(job.video_id, fv);
    }
    if (!single_json && !rows.empty())
        lvq::atomic_write_file(out_dir / "features.csv", lvq::dump_features_csv(rows));

    if (any_error) return 1;
    return any_absent ? 2 : 0;
}

int run_study(const std::string& features_path, const std::string& ratings_path,
              const std::string& quiz_path, const std::string& out_arg) {
    const auto features = lvq::parse_features_csv(lvq::read_file(features_path));
    const auto records = lvq::parse_study_csvs(lvq::read_file(ratings_path),
                                               lvq::read_file(quiz_path));
    const lvq::StudyOutputs out = lvq::run_study(features, records);

    const fs::path out_dir(out_arg);
    fs::create_directories(out_dir);
    lvq::atomic_write_file(out_dir / "correlation.csv",
                           lvq::dump_correlations_csv(out.correlations));
    lvq::atomic_write_file(out_dir / "correlation.json",
                           lvq::dump_correlations_json(out.correlations));
    lvq::atomic_write_file(out_dir / "knowledge_gain.csv",
                           lvq::dump_knowledge_gain_csv(out.gains));

    std::vector<double> kg_values;
    for (const auto& row : out.gain_table.cells)
        if (row[0]) kg_values.push_back(*row[0]);
    if (!kg_values.empty())
        lvq::atomic_write_file(out_dir / "kg_distribution.svg",
                               lvq::svg_histogram(kg_values, "Knowledge gain across videos",
                                                  "normalized gain"));

    int significant = 0;
    for (const lvq::CorrelationRow& row : out.correlations) {
        if (row.bucket == "not-significant" || row.bucket == "undefined" ||
            row.bucket == "insufficient-data" || !row.r)
            continue;
        ++significant;
        std::size_t fc = 0, tc = 0;
        const lvq::ValueTable& targets =
            row.method == lvq::CorrMethod::spearman ? out.aspects : out.gain_table;
        for (std::size_t c = 0; c < out.features.columns.size(); ++c)
            if (out.features.columns[c] == row.feature) fc = c;
        for (std::size_t c = 0; c < targets.columns.size(); ++c)
            if (targets.columns[c] == row.target) tc = c;
        std::vector<double> xs, ys;
        for (std::size_t r = 0; r < out.features.row_ids.size(); ++r)
            if (out.features.cells[r][fc] && targets.cells[r][tc]) {
                xs.push_back(*out.features.cells[r][fc]);
                ys.push_back(*targets.cells[r][tc]);
            }
        lvq::atomic_write_file(
            out_dir / ("scatter_" + row.feature + "__" + row.target + ".svg"),
            lvq::svg_scatter(xs, ys, row.feature + " vs " + row.target, row.feature, row.target));
    }

    for (const std::string& w : out.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << "videos=" << out.features.row_ids.size()
              << " correlations=" << out.correlations.size() << " significant=" << significant
              << "\n";
    return 0;
}

int run_convert(const std::string& xhtml_path, const std::string& xml_path,
                const std::string& out_path) {
    const std::string xhtml = lvq::read_file(xhtml_path);
    const std::string xml = xml_path.empty() ? std::string() : lvq::read_file(xml_path);
    const std::vector<lvq::SlideLayout> slides = lvq::convert_layout(xhtml, xml);
    lvq::atomic_write_file(out_path, lvq::dump_slide_layouts(slides));
    std::cout << "slides=" << slides.size() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"lecture video feature extraction and study statistics"};
    app.require_subcommand(1);

    auto* extract = app.add_subcommand("extract", "compute per-video features");
    std::vector<std::string> dirs;
    std::string extract_out = "lvq-out";
    std::string config_path;
    int jobs = 1;
    extract->add_option("dirs", dirs, "video input directories")
        ->required()
        ->check(CLI::ExistingDirectory);
    extract->add_option("-o,--output", extract_out,
                        "output directory, or a .json path for a single video");
    extract->add_option("--config", config_path, "pipeline configuration file")
        ->check(CLI::ExistingFile);
    extract->add_option("--jobs", jobs, "worker threads across videos")
        ->check(CLI::PositiveNumber);

    auto* study = app.add_subcommand("study", "correlate features with study outcomes");
    std::string features_path, ratings_path, quiz_path, study_out;
    study->add_option("--features", features_path, "features CSV from extract")
        ->required()
        ->check(CLI::ExistingFile);
    study->add_option("--ratings", ratings_path, "viewer ratings CSV")
        ->required()
        ->check(CLI::ExistingFile);
    study->add_option("--quiz", quiz_path, "quiz responses CSV")
        ->required()
        ->check(CLI::ExistingFile);
    study->add_option("-o,--output", study_out, "output directory")->required();

    auto* convert = app.add_subcommand("convert", "build canonical layout JSON");
    std::string xhtml_path, xml_path, convert_out = "layout.json";
    convert->add_option("--xhtml", xhtml_path, "word boxes per page (XHTML)")
        ->required()
        ->check(CLI::ExistingFile);
    convert->add_option("--xml", xml_path, "image boxes per page (XML)")->check(CLI::ExistingFile);
    convert->add_option("-o,--output", convert_out, "output JSON path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (extract->parsed()) return run_extract(dirs, extract_out, config_path, jobs);
        if (study->parsed()) return run_study(features_path, ratings_path, quiz_path, study_out);
        if (convert->parsed()) return run_convert(xhtml_path, xml_path, convert_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
