#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lincue/learners.hpp"
#include "lincue/stats.hpp"

namespace lincue {

struct SelectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Recursive feature elimination with logistic regression
// ---------------------------------------------------------------------------

struct RfeTrace {
    std::size_t n_features = 0;
    std::size_t target_size = 1;
    std::vector<std::size_t> elimination_order;  // first eliminated first
    std::vector<std::size_t> selected;           // surviving set, sorted
    std::vector<double> chosen_c;                // tuned C per elimination round (NaN when skipped)

    // Nested selected sets, smallest first: F_target, ..., F_D (each sorted).
    std::vector<std::vector<std::size_t>> nested_sets() const;

    // Per feature, the subset size at which it first appears. With
    // target_size == 1 this is the 1..D iteration numbering; survivors of a
    // larger target all report target_size.
    std::vector<int> first_appearance() const;
};

// Eliminates one feature per round: tunes C by stratified 5-fold CV over a
// 9-point log grid [1e-4, 1e4], refits on all rows, drops the smallest |w|.
// Features are standardized internally; constant columns are eliminated first
// by convention. Ties break by feature index.
RfeTrace rfe(const Dataset& data, std::size_t target_size, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Boruta
// ---------------------------------------------------------------------------

enum class BorutaZone { Relevant, Tentative, NotRelevant };
const char* boruta_zone_name(BorutaZone z);
// Table-style scale label: Relevant -> High, Tentative -> Medium, NotRelevant -> Low.
const char* boruta_scale_name(BorutaZone z);

struct BorutaVerdict {
    std::string feature;
    std::size_t feature_index = 0;
    int hits = 0;
    BorutaZone zone = BorutaZone::Tentative;
};

struct BorutaParams {
    int n_iterations = 100;
    double alpha = 0.05;
    // Per-iteration forests stay small and shallow. Large forests estimate
    // importances so precisely that a null feature with a small spurious
    // label correlation beats the re-randomized shadows almost every
    // iteration and escapes the binomial(0.5) rejection band; a noisy
    // estimator keeps the hit counts of null features near the band.
    ForestParams forest;

    BorutaParams() {
        forest.n_trees = 12;
        forest.tree.max_depth = 3;
        forest.tree.min_samples_leaf = 5;
    }
};

// Shadow-feature relevance test. Each iteration appends one row-permuted
// shadow per feature, fits a forest, and scores a hit when a feature beats
// the best shadow. Zones come from two-sided binomial bounds at
// alpha / n_features (Bonferroni).
std::vector<BorutaVerdict> boruta(const Dataset& data, const BorutaParams& params,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// RF importance ranking and the unified report
// ---------------------------------------------------------------------------

struct RankedFeature {
    std::size_t feature_index = 0;
    std::string feature;
    double importance = 0.0;
};

// Descending normalized importances; ties break by feature index.
std::vector<RankedFeature> rank_by_rf_importance(const Dataset& data, const ForestParams& params,
                                                 std::uint64_t seed);

struct FeatureReport {
    std::string feature;
    std::size_t feature_index = 0;
    double rf_importance = 0.0;
    double ovl = 0.0;
    OvlScale ovl_scale = OvlScale::Medium;
    double kw_h = 0.0;
    double kw_p = 1.0;
    int rfe_first_iteration = 0;
    int boruta_hits = 0;
    BorutaZone boruta_zone = BorutaZone::Tentative;
};

struct SelectionReport {
    std::vector<FeatureReport> rows;  // original feature order
    double spearman_importance_ovl = 0.0;
    double spearman_importance_ovl_p = 1.0;
    // Same correlation with the sparse count cues left out.
    double spearman_importance_ovl_excl = 0.0;
    double spearman_importance_ovl_excl_p = 1.0;
    std::vector<std::string> excluded_features;
};

struct SelectionParams {
    ForestParams ranking_forest;
    BorutaParams boruta;

    SelectionParams() {
        ranking_forest.n_trees = 300;
        ranking_forest.tree.max_depth = -1;
    }
};

// Joins RF importance, OVL, Kruskal-Wallis, RFE first appearance and Boruta
// into one row per feature, plus the importance-vs-OVL rank correlations.
SelectionReport build_selection_report(const Dataset& data, const SelectionParams& params,
                                       std::uint64_t seed);

// The mostly-zero count cues excluded from the secondary correlation.
const std::vector<std::string>& sparse_feature_names();

}  // namespace lincue
