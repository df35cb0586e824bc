// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "lvq/error.hpp"
#include "lvq/types.hpp"

namespace lvq {

// 1-based ranks; tied values share the average of their rank span.
inline std::vector<double> fractional_ranks(const std::vector<double>& values) {
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), values[i]);
        const double first = static_cast<double>(lo - sorted.begin()) + 1.0;
        const double ties = static_cast<double>(hi - lo);
        ranks[i] = first + (ties - 1.0) / 2.0;
    }
    return ranks;
}

// Product-moment correlation, two-pass, clamped to [-1, 1].
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ValidationError("pearson: length mismatch");
    const std::size_t n = x.size();
    if (n < 3) throw InsufficientDataError("pearson: need at least three pairs");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0.0 || syy <= 0.0)
        throw UndefinedCorrelation("pearson: constant input vector");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Rank correlation: product-moment correlation of fractional ranks. The rank
// sums are exact integers (or exact half-integers under ties), so tie-free
// inputs reproduce the closed-form 1 - 6*sum(d^2)/(n(n^2-1)) bit for bit.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ValidationError("spearman: length mismatch");
    const std::size_t n = x.size();
    if (n < 4) throw InsufficientDataError("spearman: need at least four pairs");
    const std::vector<double> rx = fractional_ranks(x);
    const std::vector<double> ry = fractional_ranks(y);
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += rx[i];
        sy += ry[i];
        sxx += rx[i] * rx[i];
        syy += ry[i] * ry[i];
        sxy += rx[i] * ry[i];
    }
    const double dn = static_cast<double>(n);
    const double num = dn * sxy - sx * sy;
    const double dx = dn * sxx - sx * sx;
    const double dy = dn * syy - sy * sy;
    if (dx <= 0.0 || dy <= 0.0)
        throw UndefinedCorrelation("spearman: constant input vector");
    return std::clamp(num / std::sqrt(dx * dy), -1.0, 1.0);
}

enum class AlphaBucket { a010, a005, a002, a001, a0005, not_significant };

inline std::string to_string(AlphaBucket b) {
    switch (b) {
        case AlphaBucket::a010: return "0.1";
        case AlphaBucket::a005: return "0.05";
        case AlphaBucket::a002: return "0.02";
        case AlphaBucket::a001: return "0.01";
        case AlphaBucket::a0005: return "0.005";
        case AlphaBucket::not_significant: return "not-significant";
    }
    return "not-significant";
}

enum class CorrMethod { spearman, pearson };

namespace detail {

// Exact two-tailed critical values of the rank correlation coefficient for
// n = 5..30 at alpha = 0.10, 0.05, 0.02, 0.01, 0.005. A value of 2.0 marks a
// level unattainable at that n.
inline constexpr double kSpearmanCritical[26][5] = {
    {0.900, 1.000, 1.000, 2.000, 2.000}, // n = 5
    {0.829, 0.886, 0.943, 1.000, 1.000}, // n = 6
    {0.714, 0.786, 0.893, 0.929, 0.964}, // n = 7
    {0.643, 0.738, 0.833, 0.881, 0.905}, // n = 8
    {0.600, 0.700, 0.783, 0.833, 0.867}, // n = 9
    {0.564, 0.648, 0.745, 0.794, 0.830}, // n = 10
    {0.536, 0.618, 0.709, 0.755, 0.800}, // n = 11
    {0.503, 0.587, 0.678, 0.727, 0.769}, // n = 12
    {0.484, 0.560, 0.648, 0.703, 0.747}, // n = 13
    {0.464, 0.538, 0.626, 0.679, 0.723}, // n = 14
    {0.446, 0.521, 0.604, 0.654, 0.700}, // n = 15
    {0.429, 0.503, 0.582, 0.635, 0.679}, // n = 16
    {0.414, 0.485, 0.566, 0.615, 0.662}, // n = 17
    {0.401, 0.472, 0.550, 0.600, 0.643}, // n = 18
    {0.391, 0.460, 0.535, 0.584, 0.628}, // n = 19
    {0.380, 0.447, 0.520, 0.570, 0.612}, // n = 20
    {0.370, 0.435, 0.508, 0.556, 0.599}, // n = 21
    {0.361, 0.425, 0.496, 0.544, 0.586}, // n = 22
    {0.353, 0.415, 0.486, 0.532, 0.573}, // n = 23
    {0.344, 0.406, 0.476, 0.521, 0.562}, // n = 24
    {0.337, 0.398, 0.466, 0.511, 0.551}, // n = 25
    {0.331, 0.390, 0.457, 0.501, 0.541}, // n = 26
    {0.324, 0.382, 0.448, 0.491, 0.531}, // n = 27
    {0.317, 0.375, 0.440, 0.483, 0.522}, // n = 28
    {0.312, 0.368, 0.433, 0.475, 0.513}, // n = 29
    {0.306, 0.362, 0.425, 0.467, 0.504}, // n = 30
};

inline constexpr double kAlphaLevels[5] = {0.10, 0.05, 0.02, 0.01, 0.005};

} // namespace detail

// Two-tailed significance bucket for a correlation of n pairs. Rank
// correlations with n <= 30 use the exact critical table; larger rank
// correlations and all product-moment correlations use the t approximation
// t = r * sqrt((n-2)/(1-r^2)) against Student's t with n-2 degrees of
// freedom.
inline AlphaBucket classify_significance(double r, int n, CorrMethod method) {
    if (n < 5) throw InsufficientDataError("significance: need at least five pairs");
    const double a = std::abs(r);
    if (a > 1.0 + 1e-12) throw ValidationError("significance: |r| exceeds 1");
    static constexpr AlphaBucket kBuckets[5] = {AlphaBucket::a010, AlphaBucket::a005,
                                                AlphaBucket::a002, AlphaBucket::a001,
                                                AlphaBucket::a0005};
    if (a >= 1.0) return AlphaBucket::a0005;

    if (method == CorrMethod::spearman && n <= 30) {
        const double* row = detail::kSpearmanCritical[n - 5];
        for (int i = 4; i >= 0; --i)
            if (row[i] <= 1.0 && a >= row[i]) return kBuckets[i];
        return AlphaBucket::not_significant;
    }

    const double df = static_cast<double>(n - 2);
    const double t = a * std::sqrt(df / (1.0 - a * a));
    const boost::math::students_t dist(df);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, t));
    for (int i = 4; i >= 0; --i)
        if (p < detail::kAlphaLevels[i]) return kBuckets[i];
    return AlphaBucket::not_significant;
}

// One multiple-selection question: a skipped question scores zero; otherwise
// each option scores +1 when the mark matches the key and -1 when it does
// not.
inline int score_question(const QuizResponse& q) {
    if (static_cast<int>(q.key.size()) != q.n_options)
        throw ValidationError("score: key length does not match option count");
    if (!q.marked.has_value()) return 0;
    if (q.marked->size() != q.key.size())
        throw ValidationError("score: marked length does not match option count");
    int score = 0;
    for (std::size_t i = 0; i < q.key.size(); ++i)
        score += ((*q.marked)[i] == q.key[i]) ? 1 : -1;
    return score;
}

// Per-participant quiz sums by phase.
struct QuizScore {
    std::string video_id;
    std::string participant_id;
    int pre = 0;
    int post = 0;
    bool has_quiz = false;
};

inline std::vector<QuizScore> quiz_scores(const std::vector<StudyRecord>& records) {
    std::vector<QuizScore> out;
    for (const StudyRecord& rec : records) {
        QuizScore qs;
        qs.video_id = rec.video_id;
        qs.participant_id = rec.participant_id;
        for (const QuizResponse& q : rec.quiz) {
            qs.has_quiz = true;
            if (q.phase == "pre") qs.pre += score_question(q);
            else qs.post += score_question(q);
        }
        out.push_back(std::move(qs));
    }
    return out;
}

struct KnowledgeGainEntry {
    std::string participant_id;
    double pre = 0.0, post = 0.0;
    double pre_norm = 0.0, post_norm = 0.0;
    double gain = 0.0; // post_norm - pre_norm
};

// Normalized learning outcome for one video. Scores from both phases are
// pooled; each is shifted by the pooled mean and scaled by the pooled
// population standard deviation, and the video value is the mean
// per-participant gain of the normalized scores.
struct KnowledgeGain {
    std::string video_id;
    int n = 0;
    double pooled_mean = 0.0;
    double pooled_stdev = 0.0;
    double half_mean_raw_gain = 0.0; // sum(post - pre) / (2n), diagnostic
    bool degenerate_variance = false;
    std::vector<KnowledgeGainEntry> entries;
    std::optional<double> value;
};

inline KnowledgeGain knowledge_gain(const std::vector<QuizScore>& scores,
                                    const std::string& video_id) {
    std::vector<const QuizScore*> mine;
    for (const QuizScore& s : scores)
        if (s.video_id == video_id && s.has_quiz) mine.push_back(&s);

    KnowledgeGain kg;
    kg.video_id = video_id;
    kg.n = static_cast<int>(mine.size());
    if (kg.n < 2)
        throw InsufficientDataError("knowledge gain: fewer than two scored participants for " +
                                    video_id);

    double sum = 0.0, raw_gain = 0.0;
    for (const QuizScore* s : mine) {
        sum += s->pre + s->post;
        raw_gain += s->post - s->pre;
    }
    const double two_n = 2.0 * kg.n;
    kg.pooled_mean = sum / two_n;
    kg.half_mean_raw_gain = raw_gain / two_n;

    double var = 0.0;
    for (const QuizScore* s : mine) {
        var += (s->pre - kg.pooled_mean) * (s->pre - kg.pooled_mean);
        var += (s->post - kg.pooled_mean) * (s->post - kg.pooled_mean);
    }
    kg.pooled_stdev = std::sqrt(var / two_n);

    if (kg.pooled_stdev == 0.0) {
        kg.degenerate_variance = true;
        return kg;
    }

    double gain_sum = 0.0;
    for (const QuizScore* s : mine) {
        KnowledgeGainEntry e;
        e.participant_id = s->participant_id;
        e.pre = s->pre;
        e.post = s->post;
        e.pre_norm = (s->pre - kg.pooled_mean) / kg.pooled_stdev;
        e.post_norm = (s->post - kg.pooled_mean) / kg.pooled_stdev;
        e.gain = e.post_norm - e.pre_norm;
        gain_sum += e.gain;
        kg.entries.push_back(std::move(e));
    }
    kg.value = gain_sum / kg.n;
    return kg;
}

// Aligned per-video columns: cells[row][column], absent = missing.
struct ValueTable {
    std::vector<std::string> row_ids;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> cells;
};

struct CorrelationRow {
    std::string feature;
    std::string target;
    CorrMethod method = CorrMethod::spearman;
    std::optional<double> r;
    int n = 0;
    std::string bucket; // alpha bucket, "undefined", or "insufficient-data"
};

namespace detail {

inline void correlate_pair(const ValueTable& features, std::size_t fc, const ValueTable& targets,
                           std::size_t tc, CorrMethod method, std::vector<CorrelationRow>& out) {
    std::vector<double> x, y;
    for (std::size_t row = 0; row < features.row_ids.size(); ++row) {
        const auto& fv = features.cells[row][fc];
        const auto& tv = targets.cells[row][tc];
        if (fv && tv) {
            x.push_back(*fv);
            y.push_back(*tv);
        }
    }
    CorrelationRow r;
    r.feature = features.columns[fc];
    r.target = targets.columns[tc];
    r.method = method;
    r.n = static_cast<int>(x.size());
    try {
        if (r.n < 5) throw InsufficientDataError("fewer than five paired videos");
        const double val = method == CorrMethod::spearman ? spearman(x, y) : pearson(x, y);
        r.r = val;
        r.bucket = to_string(classify_significance(val, r.n, method));
    } catch (const UndefinedCorrelation&) {
        r.bucket = "undefined";
    } catch (const InsufficientDataError&) {
        r.bucket = "insufficient-data";
    }
    out.push_back(std::move(r));
}

} // namespace detail

// Every feature against every target. Rank correlation for rating targets,
// product-moment for the pearson table. Rows come out sorted by
// (feature, target); pairs that cannot be computed still get a row.
inline std::vector<CorrelationRow> correlation_table(const ValueTable& features,
                                                     const ValueTable& spearman_targets,
                                                     const ValueTable& pearson_targets) {
    if (features.row_ids != spearman_targets.row_ids ||
        features.row_ids != pearson_targets.row_ids)
        throw ValidationError("correlation table: tables must share the video list");

    std::vector<CorrelationRow> out;
    for (std::size_t fc = 0; fc < features.columns.size(); ++fc) {
        for (std::size_t tc = 0; tc < spearman_targets.columns.size(); ++tc)
            detail::correlate_pair(features, fc, spearman_targets, tc, CorrMethod::spearman, out);
        for (std::size_t tc = 0; tc < pearson_targets.columns.size(); ++tc)
            detail::correlate_pair(features, fc, pearson_targets, tc, CorrMethod::pearson, out);
    }
    std::sort(out.begin(), out.end(), [](const CorrelationRow& a, const CorrelationRow& b) {
        if (a.feature != b.feature) return a.feature < b.feature;
        return a.target < b.target;
    });
    return out;
}

} // namespace lvq
