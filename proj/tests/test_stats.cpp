// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <vector>

#include "lvq/stats.hpp"

using namespace lvq;

TEST_CASE("fractional ranks: ties share the average rank") {
    CHECK(fractional_ranks({10, 20, 20, 30}) == std::vector<double>{1.0, 2.5, 2.5, 4.0});
    CHECK(fractional_ranks({5, 5, 5}) == std::vector<double>{2.0, 2.0, 2.0});
    CHECK(fractional_ranks({3, 1, 2}) == std::vector<double>{3.0, 1.0, 2.0});
}

TEST_CASE("pearson: frozen values and exact endpoints") {
    CHECK(pearson({1, 2, 3}, {1, 3, 2}) == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(pearson({1, 2, 3, 4}, {5, 7, 9, 11}) == 1.0);   // y = 2x + 3, exactly
    CHECK(pearson({1, 2, 3, 4}, {11, 9, 7, 5}) == -1.0);
    CHECK_THROWS_AS(pearson({1, 2}, {3, 4}), InsufficientDataError);
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), UndefinedCorrelation);
    CHECK_THROWS_AS(pearson({1, 2}, {3, 4, 5}), ValidationError);
}

TEST_CASE("spearman: frozen tie value, monotone endpoints, guards") {
    CHECK(spearman({1, 2, 3, 4}, {1, 2, 2, 4}) ==
          Catch::Approx(0.9486832980505138).epsilon(1e-12));
    CHECK(spearman({1, 2, 3, 4}, {10, 20, 30, 40}) == 1.0);
    CHECK(spearman({1, 2, 3, 4}, {9, 7, 3, 1}) == -1.0);
    CHECK_THROWS_AS(spearman({1, 2, 3}, {1, 2, 3}), InsufficientDataError);
    CHECK_THROWS_AS(spearman({2, 2, 2, 2}, {1, 2, 3, 4}), UndefinedCorrelation);
}

TEST_CASE("spearman: tie-free inputs reproduce the closed form bit for bit") {
    const std::vector<double> x = {3.0, 1.0, 4.0, 1.5, 9.0, 2.6, 5.0, 3.5};
    const std::vector<double> y = {2.0, 7.0, 1.0, 8.0, 2.8, 1.8, 0.3, 6.0};
    const std::vector<double> rx = fractional_ranks(x);
    const std::vector<double> ry = fractional_ranks(y);
    long long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        REQUIRE(rx[i] == std::floor(rx[i])); // tie-free
        REQUIRE(ry[i] == std::floor(ry[i]));
        const long long d = static_cast<long long>(rx[i]) - static_cast<long long>(ry[i]);
        s += d * d;
    }
    const long long n = static_cast<long long>(x.size());
    const long long m = n * (n * n - 1);
    const double closed = static_cast<double>(m - 6 * s) / static_cast<double>(m);
    CHECK(spearman(x, y) == closed);
}

TEST_CASE("significance: rank table anchors at twenty-two videos") {
    CHECK(classify_significance(0.358, 22, CorrMethod::spearman) ==
          AlphaBucket::not_significant);
    CHECK(classify_significance(0.420, 22, CorrMethod::spearman) == AlphaBucket::a010);
    CHECK(classify_significance(0.429, 22, CorrMethod::spearman) == AlphaBucket::a005);
    CHECK(classify_significance(0.525, 22, CorrMethod::spearman) == AlphaBucket::a002);
    CHECK(classify_significance(0.561, 22, CorrMethod::spearman) == AlphaBucket::a001);
    CHECK(classify_significance(0.608, 22, CorrMethod::spearman) == AlphaBucket::a0005);
    CHECK(classify_significance(-0.623, 22, CorrMethod::spearman) == AlphaBucket::a0005);
    // Exact critical values are attained, not merely exceeded.
    CHECK(classify_significance(0.361, 22, CorrMethod::spearman) == AlphaBucket::a010);
    CHECK(classify_significance(0.586, 22, CorrMethod::spearman) == AlphaBucket::a0005);
}

TEST_CASE("significance: small-n rank levels that cannot be reached stay unreachable") {
    CHECK(classify_significance(0.89, 5, CorrMethod::spearman) ==
          AlphaBucket::not_significant);
    CHECK(classify_significance(0.95, 5, CorrMethod::spearman) == AlphaBucket::a010);
    CHECK(classify_significance(1.0, 5, CorrMethod::spearman) == AlphaBucket::a0005);
    CHECK(classify_significance(1.0, 7, CorrMethod::pearson) == AlphaBucket::a0005);
    CHECK_THROWS_AS(classify_significance(0.9, 4, CorrMethod::spearman),
                    InsufficientDataError);
    CHECK_THROWS_AS(classify_significance(1.1, 10, CorrMethod::spearman), ValidationError);
}

TEST_CASE("significance: t distribution path for the product-moment method") {
    // Two-tailed critical r at 20 degrees of freedom: 0.3598 (10%), 0.4227 (5%).
    CHECK(classify_significance(0.359, 22, CorrMethod::pearson) ==
          AlphaBucket::not_significant);
    CHECK(classify_significance(0.360, 22, CorrMethod::pearson) == AlphaBucket::a010);
    CHECK(classify_significance(0.422, 22, CorrMethod::pearson) == AlphaBucket::a010);
    CHECK(classify_significance(0.423, 22, CorrMethod::pearson) == AlphaBucket::a005);
    // Rank method beyond the table also uses the t path.
    CHECK(classify_significance(0.10, 200, CorrMethod::spearman) ==
          AlphaBucket::not_significant);
    CHECK(classify_significance(0.25, 200, CorrMethod::spearman) == AlphaBucket::a0005);
}

TEST_CASE("quiz scoring: reachable sums for a five-option question") {
    QuizResponse q;
    q.question_id = "q";
    q.phase = "pre";
    q.n_options = 5;
    q.key = {true, false, false, true, false};

    std::set<int> seen;
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<bool> marked(5);
        for (int b = 0; b < 5; ++b) marked[b] = (mask >> b) & 1;
        q.marked = marked;
        seen.insert(score_question(q));
    }
    CHECK(seen == std::set<int>{-5, -3, -1, 1, 3, 5});

    q.marked.reset(); // skipped question
    CHECK(score_question(q) == 0);

    q.marked = std::vector<bool>{true, false, false, true, false};
    CHECK(score_question(q) == 5);

    QuizResponse bad = q;
    bad.key = {true};
    CHECK_THROWS_AS(score_question(bad), ValidationError);
}

TEST_CASE("quiz scores: per-phase sums and the has_quiz marker") {
    StudyRecord rec;
    rec.video_id = "v";
    rec.participant_id = "p";
    auto add = [&rec](const std::string& phase, std::vector<bool> key,
                      std::optional<std::vector<bool>> marked) {
        QuizResponse q;
        q.question_id = "q";
        q.phase = phase;
        q.n_options = static_cast<int>(key.size());
        q.key = std::move(key);
        q.marked = std::move(marked);
        rec.quiz.push_back(std::move(q));
    };
    add("pre", {true, false, false}, std::vector<bool>{true, false, false});  // +3
    add("pre", {true, true, false}, std::nullopt);                            // 0 (skip)
    add("post", {true, false, false}, std::vector<bool>{false, true, true});  // -3
    add("post", {false, false, true}, std::vector<bool>{false, true, true});  // +1

    StudyRecord empty;
    empty.video_id = "v";
    empty.participant_id = "e";

    std::vector<QuizScore> scores = quiz_scores({rec, empty});
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].pre == 3);
    CHECK(scores[0].post == -2);
    CHECK(scores[0].has_quiz);
    CHECK_FALSE(scores[1].has_quiz);
}

TEST_CASE("knowledge gain: hand-checked two-participant case") {
    std::vector<QuizScore> scores = {
        {"v", "p1", 0, 2, true},
        {"v", "p2", 0, 2, true},
        {"other", "p3", 5, 5, true},
    };
    KnowledgeGain kg = knowledge_gain(scores, "v");
    CHECK(kg.n == 2);
    CHECK(kg.pooled_mean == Catch::Approx(1.0));
    CHECK(kg.pooled_stdev == Catch::Approx(1.0));
    CHECK(kg.half_mean_raw_gain == Catch::Approx(1.0));
    CHECK_FALSE(kg.degenerate_variance);
    REQUIRE(kg.value.has_value());
    CHECK(*kg.value == Catch::Approx(2.0));
    REQUIRE(kg.entries.size() == 2);
    CHECK(kg.entries[0].pre_norm == Catch::Approx(-1.0));
    CHECK(kg.entries[0].post_norm == Catch::Approx(1.0));
}

TEST_CASE("knowledge gain: degenerate variance yields no value") {
    std::vector<QuizScore> scores = {{"v", "p1", 3, 3, true}, {"v", "p2", 3, 3, true}};
    KnowledgeGain kg = knowledge_gain(scores, "v");
    CHECK(kg.degenerate_variance);
    CHECK_FALSE(kg.value.has_value());
    CHECK(kg.pooled_stdev == 0.0);
}

TEST_CASE("knowledge gain: participants without quiz answers do not count") {
    std::vector<QuizScore> scores = {{"v", "p1", 1, 4, true}, {"v", "p2", 0, 0, false}};
    CHECK_THROWS_AS(knowledge_gain(scores, "v"), InsufficientDataError);
    CHECK_THROWS_AS(knowledge_gain({}, "v"), InsufficientDataError);
}

TEST_CASE("knowledge gain: normalization invariants over a mixed cohort") {
    std::vector<QuizScore> scores = {
        {"v", "a", -3, 2, true}, {"v", "b", 1, 5, true},  {"v", "c", 0, -1, true},
        {"v", "d", 4, 4, true},  {"v", "e", -5, 3, true},
    };
    KnowledgeGain kg = knowledge_gain(scores, "v");
    REQUIRE(kg.value.has_value());

    double norm_sum = 0.0, norm_sq = 0.0;
    for (const KnowledgeGainEntry& e : kg.entries) {
        norm_sum += e.pre_norm + e.post_norm;
        norm_sq += e.pre_norm * e.pre_norm + e.post_norm * e.post_norm;
    }
    const double two_n = 2.0 * kg.n;
    CHECK(norm_sum == Catch::Approx(0.0).margin(1e-9));
    CHECK(norm_sq / two_n == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(*kg.value ==
          Catch::Approx(2.0 * kg.half_mean_raw_gain / kg.pooled_stdev).epsilon(1e-9));
}

TEST_CASE("correlation table: full cross product, sorted, with fallback rows") {
    ValueTable features;
    features.row_ids = {"v1", "v2", "v3", "v4", "v5"};
    features.columns = {"beta", "alpha"};
    features.cells = {
        {1.0, 1.0}, {2.0, 1.0}, {3.0, 1.0}, {4.0, 1.0}, {std::nullopt, 1.0},
    };
    ValueTable ratings;
    ratings.row_ids = features.row_ids;
    ratings.columns = {"overall_rating"};
    ratings.cells = {{2.0}, {2.5}, {3.0}, {3.5}, {4.0}};
    ValueTable gains;
    gains.row_ids = features.row_ids;
    gains.columns = {"knowledge_gain"};
    gains.cells = {{0.1}, {0.5}, {0.2}, {0.9}, {0.4}};

    std::vector<CorrelationRow> rows = correlation_table(features, ratings, gains);
    REQUIRE(rows.size() == 4);
    // Sorted by (feature, target).
    CHECK(rows[0].feature == "alpha");
    CHECK(rows[0].target == "knowledge_gain");
    CHECK(rows[1].feature == "alpha");
    CHECK(rows[1].target == "overall_rating");
    CHECK(rows[2].feature == "beta");

    // alpha is constant: undefined for both methods.
    CHECK(rows[0].bucket == "undefined");
    CHECK_FALSE(rows[0].r.has_value());
    CHECK(rows[1].bucket == "undefined");

    // beta has four paired videos against the ratings: not enough.
    CHECK(rows[3].feature == "beta");
    CHECK(rows[3].target == "overall_rating");
    CHECK(rows[3].n == 4);
    CHECK(rows[3].bucket == "insufficient-data");
    CHECK_FALSE(rows[3].r.has_value());

    // beta against the gains: a real correlation with n = 4 missing one row.
    CHECK(rows[2].target == "knowledge_gain");
    CHECK(rows[2].bucket == "insufficient-data");

    ValueTable wrong = ratings;
    wrong.row_ids = {"v1", "v2", "v3", "v4", "vX"};
    CHECK_THROWS_AS(correlation_table(features, wrong, gains), ValidationError);
}

TEST_CASE("alpha buckets stringify to the report vocabulary") {
    CHECK(to_string(AlphaBucket::a010) == "0.1");
    CHECK(to_string(AlphaBucket::a005) == "0.05");
    CHECK(to_string(AlphaBucket::a002) == "0.02");
    CHECK(to_string(AlphaBucket::a001) == "0.01");
    CHECK(to_string(AlphaBucket::a0005) == "0.005");
    CHECK(to_string(AlphaBucket::not_significant) == "not-significant");
}
