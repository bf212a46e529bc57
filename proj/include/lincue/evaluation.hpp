#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lincue/features.hpp"
#include "lincue/learners.hpp"

namespace lincue {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    long tp = 0, tn = 0, fp = 0, fn = 0;
    bool degenerate = false;  // set when a precision/recall denominator was 0
};

// Confusion-matrix metrics; `positive` selects the positive class (1 = fake).
Metrics compute_metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                        int positive = 1);

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Deterministic stratified k-fold; per-fold class counts stay within one
// sample of the global proportions. Throws when a class has fewer than k rows.
std::vector<Fold> stratified_kfold(const std::vector<int>& labels, int k, std::uint64_t seed);

// FeatureMatrix -> learner dataset; fake maps to label 1 (the positive class).
Dataset dataset_from_matrix(const FeatureMatrix& m);

using LearnerGrid = std::vector<HyperParams>;
using GridConfig = std::map<std::string, LearnerGrid>;

GridConfig default_grid_config();
GridConfig load_grid_config(const std::string& path);  // JSON {"dt": [{...}, ...], ...}

struct GridSearchResult {
    HyperParams best_params;
    std::size_t best_index = 0;
    Metrics cv_metrics;                 // unweighted means over folds
    std::vector<Metrics> fold_metrics;  // for the winning point
    Model refit_model;                  // refit on the full standardized data
    Standardizer refit_standardizer;
};

// Evaluates every lattice point with per-fold standardization fitted on the
// training split only; a point that fails on any fold is disqualified. Ties
// break by grid order. Throws when every point is disqualified.
GridSearchResult grid_search_cv(const Dataset& data, LearnerKind kind, const LearnerGrid& grid,
                                int k, std::uint64_t seed);
GridSearchResult grid_search_cv_with_folds(const Dataset& data, LearnerKind kind,
                                           const LearnerGrid& grid, const std::vector<Fold>& folds,
                                           std::uint64_t seed);

struct EvalCell {
    std::string classifier;
    int subset_size = 0;
    double mean_accuracy = 0.0;
    double mean_f1 = 0.0;
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    HyperParams chosen_params;
    std::vector<Metrics> fold_metrics;
};

struct ClassifierSummary {
    std::string classifier;
    double max_accuracy = 0.0;
    int features_at_max_accuracy = 0;
    double max_f1 = 0.0;
    int features_at_max_f1 = 0;
    double average_accuracy = 0.0;
    double average_f1 = 0.0;
};

struct EvalGrid {
    std::vector<std::string> classifiers;
    std::vector<std::vector<std::size_t>> subsets;  // nested feature-index sets, size 1..D
    std::vector<EvalCell> cells;                    // classifier-major, then subset size
    std::vector<ClassifierSummary> summaries;
};

// Full experiment over nested feature subsets: for every subset size a fresh
// grid search per classifier on shared folds. `nested_subsets[i]` must have
// size i+1 and contain the previous subset.
EvalGrid run_experiment(const FeatureMatrix& matrix,
                        const std::vector<std::vector<std::size_t>>& nested_subsets,
                        const std::vector<LearnerKind>& classifiers, int k, std::uint64_t seed,
                        const GridConfig& grids);

}  // namespace lincue
