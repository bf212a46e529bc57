#include <doctest.h>

#include <set>

#include "lincue/rng.hpp"
#include "lincue/selection.hpp"
#include "lincue/stats.hpp"

using namespace lincue;

namespace {

Dataset synthetic(std::size_t n, std::size_t noise_features, std::uint64_t seed,
                  bool with_constant = false) {
    Rng rng(seed);
    Dataset d;
    d.feature_names.push_back("signal");
    for (std::size_t f = 0; f < noise_features; ++f) d.feature_names.push_back("noise" + std::to_string(f));
    if (with_constant) d.feature_names.push_back("constant");
    for (std::size_t i = 0; i < n; ++i) {
        const int label = i % 2 == 0 ? 0 : 1;
        std::vector<double> row;
        row.push_back(static_cast<double>(label) + 0.05 * rng.normal());
        for (std::size_t f = 0; f < noise_features; ++f) row.push_back(rng.normal());
        if (with_constant) row.push_back(3.0);
        d.X.push_back(std::move(row));
        d.y.push_back(label);
    }
    return d;
}

}  // namespace

TEST_CASE("rfe trace structure (Eq-4 nesting)") {
    const Dataset d = synthetic(60, 4, 11);
    const RfeTrace trace = rfe(d, 1, 42);
    CHECK(trace.n_features == 5);
    CHECK(trace.elimination_order.size() == 4);
    CHECK(trace.selected.size() == 1);

    const auto sets = trace.nested_sets();
    REQUIRE(sets.size() == 5);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        CHECK(sets[i].size() == i + 1);
        if (i > 0) {
            // strict nesting
            for (std::size_t f : sets[i - 1])
                CHECK(std::find(sets[i].begin(), sets[i].end(), f) != sets[i].end());
        }
    }
    const auto first = trace.first_appearance();
    std::set<int> iterations(first.begin(), first.end());
    CHECK(iterations.size() == 5);  // all distinct when target is 1
    CHECK(*iterations.begin() == 1);
    CHECK(*iterations.rbegin() == 5);
}

TEST_CASE("rfe keeps the informative feature to the end") {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Dataset d = synthetic(110, 3, 500 + seed);
        const RfeTrace trace = rfe(d, 1, seed);
        if (trace.selected == std::vector<std::size_t>{0}) ++wins;
    }
    CHECK(wins >= 9);
}

TEST_CASE("rfe eliminates constant columns first") {
    const Dataset d = synthetic(40, 2, 7, /*with_constant=*/true);
    const RfeTrace trace = rfe(d, 1, 3);
    CHECK(trace.elimination_order.front() == 3);  // the constant column
    CHECK(std::isnan(trace.chosen_c.front()));
}

TEST_CASE("rfe with target equal to feature count") {
    const Dataset d = synthetic(30, 2, 5);
    const RfeTrace trace = rfe(d, 3, 1);
    CHECK(trace.elimination_order.empty());
    CHECK(trace.selected == std::vector<std::size_t>{0, 1, 2});
    CHECK(trace.nested_sets().size() == 1);
}

TEST_CASE("boruta") {
    SUBCASE("informative feature relevant, noise not") {
        BorutaParams params;
        params.n_iterations = 40;
        params.forest.n_trees = 40;
        const Dataset d = synthetic(80, 4, 13);
        const auto verdicts = boruta(d, params, 7);
        REQUIRE(verdicts.size() == 5);
        CHECK(verdicts[0].zone == BorutaZone::Relevant);
        CHECK(verdicts[0].hits >= 38);
        for (std::size_t f = 1; f < 5; ++f) CHECK(verdicts[f].zone != BorutaZone::Relevant);
    }
    SUBCASE("hit counts reproduce bit-for-bit") {
        BorutaParams params;
        params.n_iterations = 15;
        params.forest.n_trees = 20;
        const Dataset d = synthetic(50, 3, 19);
        const auto a = boruta(d, params, 123);
        const auto b = boruta(d, params, 123);
        for (std::size_t f = 0; f < a.size(); ++f) CHECK(a[f].hits == b[f].hits);
    }
    SUBCASE("zone bounds use the corrected binomial tails") {
        // at n=100, alpha=.05, D=15: relevant needs sf < 1/300
        CHECK(binom_sf(98, 100, 0.5) < 0.05 / 15.0);
        CHECK(binom_sf(55, 100, 0.5) > 0.05 / 15.0);
        CHECK(binom_cdf(0, 100, 0.5) < 0.05 / 15.0);
    }
    SUBCASE("shadow columns lose label correlation") {
        const Dataset d = synthetic(100, 1, 3);
        std::vector<double> labels(d.n());
        for (std::size_t i = 0; i < d.n(); ++i) labels[i] = d.y[i];
        // permuted copies of the informative column should score |rho| ~ 0
        int extreme = 0;
        const int trials = 200;
        for (int t = 0; t < trials; ++t) {
            Rng rng = Rng::derive(99, {static_cast<std::uint64_t>(t)});
            const auto perm = rng.permutation(d.n());
            std::vector<double> shadow(d.n());
            for (std::size_t i = 0; i < d.n(); ++i) shadow[i] = d.X[perm[i]][0];
            const TestResult r = spearman(shadow, labels);
            if (r.p_value < 0.001) ++extreme;
        }
        CHECK(extreme <= 3);  // ~0.2 expected under the null
    }
    SUBCASE("iteration floor") {
        BorutaParams params;
        params.n_iterations = 5;
        CHECK_THROWS_AS(boruta(synthetic(30, 2, 1), params, 1), SelectionError);
    }
}

TEST_CASE("rank_by_rf_importance") {
    SUBCASE("label copy ranks first across seeds") {
        int wins = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            ForestParams params;
            params.n_trees = 60;
            const auto ranked = rank_by_rf_importance(synthetic(90, 4, 700 + seed), params, seed);
            if (ranked.front().feature_index == 0) ++wins;
        }
        CHECK(wins >= 9);
    }
    SUBCASE("all-noise importances stay near uniform") {
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Rng rng(900 + seed);
            Dataset d;
            for (int f = 0; f < 4; ++f) d.feature_names.push_back("n" + std::to_string(f));
            for (int i = 0; i < 120; ++i) {
                d.X.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
                d.y.push_back(i % 2);
            }
            ForestParams params;
            params.n_trees = 80;
            const auto ranked = rank_by_rf_importance(d, params, seed);
            const double ratio = ranked.front().importance / ranked.back().importance;
            if (ratio < 3.0) ++ok;
        }
        CHECK(ok >= 9);
    }
    SUBCASE("ranking importances sum to one") {
        ForestParams params;
        params.n_trees = 30;
        const auto ranked = rank_by_rf_importance(synthetic(60, 3, 77), params, 5);
        double total = 0.0;
        for (const auto& r : ranked) total += r.importance;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("build_selection_report shape and internal consistency") {
    const Dataset d = synthetic(60, 3, 23);
    SelectionParams params;
    params.ranking_forest.n_trees = 40;
    params.boruta.n_iterations = 15;
    params.boruta.forest.n_trees = 20;
    const SelectionReport report = build_selection_report(d, params, 9);
    REQUIRE(report.rows.size() == 4);
    for (const auto& row : report.rows) {
        CHECK(row.rf_importance >= 0.0);
        CHECK(row.ovl >= 0.0);
        CHECK(row.ovl <= 1.0);
        CHECK(row.kw_p >= 0.0);
        CHECK(row.kw_p <= 1.0);
        CHECK(row.rfe_first_iteration >= 1);
        CHECK(row.rfe_first_iteration <= 4);
    }
    // the signal column must separate sharply
    CHECK(report.rows[0].ovl < 0.4);
    CHECK(report.rows[0].kw_p < 0.01);
    // no sparse cues in this synthetic dataset
    CHECK(report.excluded_features.empty());
    CHECK(report.spearman_importance_ovl_excl == report.spearman_importance_ovl);
}
