#include "lincue/evaluation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

#include "lincue/io_util.hpp"
#include "lincue/rng.hpp"

namespace lincue {

namespace {
constexpr std::uint64_t kFoldTag = 0x666f6c6473ULL;   // stream tag: fold shuffling
constexpr std::uint64_t kRefitTag = 0x7265666974ULL;  // stream tag: full-data refit
}  // namespace

Metrics compute_metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred,
                        int positive) {
    if (y_true.size() != y_pred.size() || y_true.empty())
        throw EvalError("compute_metrics: label vectors must be non-empty and equal-length");
    Metrics m;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        const bool t = y_true[i] == positive;
        const bool p = y_pred[i] == positive;
        if (t && p) ++m.tp;
        else if (!t && !p) ++m.tn;
        else if (!t && p) ++m.fp;
        else ++m.fn;
    }
    const double total = static_cast<double>(m.tp + m.tn + m.fp + m.fn);
    m.accuracy = static_cast<double>(m.tp + m.tn) / total;
    if (m.tp + m.fp > 0) m.precision = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fp);
    else m.degenerate = true;
    if (m.tp + m.fn > 0) m.recall = static_cast<double>(m.tp) / static_cast<double>(m.tp + m.fn);
    else m.degenerate = true;
    if (m.precision + m.recall > 0.0)
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

std::vector<Fold> stratified_kfold(const std::vector<int>& labels, int k, std::uint64_t seed) {
    if (k < 2) throw EvalError("stratified_kfold: k must be >= 2");
    std::vector<std::vector<std::size_t>> by_class(2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw EvalError("stratified_kfold: labels must be 0/1");
        by_class[static_cast<std::size_t>(labels[i])].push_back(i);
    }
    for (int c = 0; c < 2; ++c) {
        if (by_class[static_cast<std::size_t>(c)].size() < static_cast<std::size_t>(k))
            throw EvalError("stratified_kfold: class " + std::to_string(c) + " has fewer than k=" +
                            std::to_string(k) + " members");
    }

    // Deal each class round-robin; the second class starts where the first
    // left off so fold sizes stay balanced overall.
    std::vector<std::vector<std::size_t>> test_sets(static_cast<std::size_t>(k));
    std::size_t offset = 0;
    for (int c = 0; c < 2; ++c) {
        auto& members = by_class[static_cast<std::size_t>(c)];
        Rng rng = Rng::derive(seed, {kFoldTag, static_cast<std::uint64_t>(c)});
        rng.shuffle(members);
        for (std::size_t i = 0; i < members.size(); ++i)
            test_sets[(offset + i) % static_cast<std::size_t>(k)].push_back(members[i]);
        offset = (offset + members.size()) % static_cast<std::size_t>(k);
    }

    std::vector<Fold> folds(static_cast<std::size_t>(k));
    for (std::size_t f = 0; f < folds.size(); ++f) {
        auto& test = test_sets[f];
        std::sort(test.begin(), test.end());
        folds[f].test = test;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (!std::binary_search(test.begin(), test.end(), i)) folds[f].train.push_back(i);
        }
    }
    return folds;
}

Dataset dataset_from_matrix(const FeatureMatrix& m) {
    Dataset d;
    d.feature_names.assign(feature_names().begin(), feature_names().end());
    d.X.reserve(m.size());
    d.y.reserve(m.size());
    for (const auto& row : m.rows) {
        d.X.push_back(std::vector<double>(row.features.values.begin(), row.features.values.end()));
        d.y.push_back(row.label == Label::Fake ? 1 : 0);
    }
    return d;
}

GridConfig default_grid_config() {
    GridConfig g;
    for (double depth : {2.0, 4.0, 8.0, -1.0}) g["dt"].push_back({{"max_depth", depth}});
    for (double trees : {100.0, 300.0})
        for (double depth : {4.0, -1.0})
            g["rf"].push_back({{"n_trees", trees}, {"max_depth", depth}});
    for (int e = -4; e <= 4; ++e) g["lr"].push_back({{"C", std::pow(10.0, e)}});
    g["nb"].push_back({});
    for (double width : {4.0, 8.0, 16.0})
        for (double lr : {0.01, 0.1})
            g["mlp"].push_back({{"hidden_width", width}, {"learning_rate", lr}, {"epochs", 800.0}});
    return g;
}

GridConfig load_grid_config(const std::string& path) {
    const auto j = nlohmann::json::parse(read_file(path));
    GridConfig g;
    for (const auto& [name, points] : j.items()) {
        parse_learner(name);  // validates the classifier key
        LearnerGrid grid;
        for (const auto& point : points) {
            HyperParams params;
            for (const auto& [key, value] : point.items()) params[key] = value.get<double>();
            grid.push_back(std::move(params));
        }
        if (grid.empty()) throw EvalError("grid config: empty grid for " + name);
        g[name] = std::move(grid);
    }
    if (g.empty()) throw EvalError("grid config: no classifiers defined");
    return g;
}

GridSearchResult grid_search_cv(const Dataset& data, LearnerKind kind, const LearnerGrid& grid,
                                int k, std::uint64_t seed) {
    return grid_search_cv_with_folds(data, kind, grid, stratified_kfold(data.y, k, seed), seed);
}

GridSearchResult grid_search_cv_with_folds(const Dataset& data, LearnerKind kind,
                                           const LearnerGrid& grid, const std::vector<Fold>& folds,
                                           std::uint64_t seed) {
    if (grid.empty()) throw EvalError("grid_search_cv: empty grid");

    bool have_best = false;
    std::size_t best_index = 0;
    double best_accuracy = -1.0;
    std::vector<Metrics> best_fold_metrics;

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        std::vector<Metrics> fold_metrics;
        bool disqualified = false;
        for (std::size_t f = 0; f < folds.size(); ++f) {
            const Dataset train = data.subset_rows(folds[f].train);
            const Dataset test = data.subset_rows(folds[f].test);
            const Standardizer std_fit = Standardizer::fit(train.X);
            Dataset train_std = train;
            train_std.X = std_fit.transform(train.X);
            try {
                const Model model =
                    train_model(kind, train_std, grid[gi],
                                Rng::derive_key(seed, {static_cast<std::uint64_t>(gi),
                                                       static_cast<std::uint64_t>(f)}));
                const auto proba = predict_proba(model, std_fit.transform(test.X));
                fold_metrics.push_back(compute_metrics(test.y, labels_from_proba(proba)));
            } catch (const LearnerError&) {
                disqualified = true;  // e.g. a diverging MLP learning rate
                break;
            }
        }
        if (disqualified) continue;

        Metrics mean;
        for (const auto& m : fold_metrics) {
            mean.accuracy += m.accuracy;
            mean.precision += m.precision;
            mean.recall += m.recall;
            mean.f1 += m.f1;
        }
        const double nf = static_cast<double>(fold_metrics.size());
        mean.accuracy /= nf;
        mean.precision /= nf;
        mean.recall /= nf;
        mean.f1 /= nf;

        if (!have_best || mean.accuracy > best_accuracy) {
            have_best = true;
            best_accuracy = mean.accuracy;
            best_index = gi;
            best_fold_metrics = std::move(fold_metrics);
        }
    }
    if (!have_best) throw EvalError("grid_search_cv: every grid point failed training");

    GridSearchResult result;
    result.best_params = grid[best_index];
    result.best_index = best_index;
    result.fold_metrics = std::move(best_fold_metrics);
    for (const auto& m : result.fold_metrics) {
        result.cv_metrics.accuracy += m.accuracy;
        result.cv_metrics.precision += m.precision;
        result.cv_metrics.recall += m.recall;
        result.cv_metrics.f1 += m.f1;
    }
    const double nf = static_cast<double>(result.fold_metrics.size());
    result.cv_metrics.accuracy /= nf;
    result.cv_metrics.precision /= nf;
    result.cv_metrics.recall /= nf;
    result.cv_metrics.f1 /= nf;

    result.refit_standardizer = Standardizer::fit(data.X);
    Dataset full_std = data;
    full_std.X = result.refit_standardizer.transform(data.X);
    result.refit_model =
        train_model(kind, full_std, result.best_params, Rng::derive_key(seed, {kRefitTag}));
    return result;
}

EvalGrid run_experiment(const FeatureMatrix& matrix,
                        const std::vector<std::vector<std::size_t>>& nested_subsets,
                        const std::vector<LearnerKind>& classifiers, int k, std::uint64_t seed,
                        const GridConfig& grids) {
    const Dataset full = dataset_from_matrix(matrix);
    for (std::size_t i = 0; i < nested_subsets.size(); ++i) {
        if (nested_subsets[i].size() != i + 1)
            throw EvalError("run_experiment: subset " + std::to_string(i + 1) + " has wrong size");
    }
    if (nested_subsets.empty() || nested_subsets.back().size() != full.d())
        throw EvalError("run_experiment: nested subsets must cover all features");

    const std::vector<Fold> folds = stratified_kfold(full.y, k, Rng::derive_key(seed, {kFoldTag}));

    EvalGrid out;
    out.subsets = nested_subsets;
    for (LearnerKind kind : classifiers) out.classifiers.push_back(learner_name(kind));

    for (std::size_t c = 0; c < classifiers.size(); ++c) {
        const LearnerKind kind = classifiers[c];
        const auto grid_it = grids.find(learner_name(kind));
        if (grid_it == grids.end())
            throw EvalError(std::string("run_experiment: no grid for ") + learner_name(kind));

        ClassifierSummary summary;
        summary.classifier = learner_name(kind);
        for (std::size_t s = 0; s < nested_subsets.size(); ++s) {
            const Dataset sub = full.subset_features(nested_subsets[s]);
            const std::uint64_t cell_seed =
                Rng::derive_key(seed, {static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(s)});
            GridSearchResult r = grid_search_cv_with_folds(sub, kind, grid_it->second, folds, cell_seed);

            EvalCell cell;
            cell.classifier = learner_name(kind);
            cell.subset_size = static_cast<int>(s + 1);
            cell.mean_accuracy = r.cv_metrics.accuracy;
            cell.mean_f1 = r.cv_metrics.f1;
            cell.mean_precision = r.cv_metrics.precision;
            cell.mean_recall = r.cv_metrics.recall;
            cell.chosen_params = r.best_params;
            cell.fold_metrics = std::move(r.fold_metrics);

            summary.average_accuracy += cell.mean_accuracy;
            summary.average_f1 += cell.mean_f1;
            if (cell.mean_accuracy > summary.max_accuracy) {
                summary.max_accuracy = cell.mean_accuracy;
                summary.features_at_max_accuracy = cell.subset_size;
            }
            if (cell.mean_f1 > summary.max_f1) {
                summary.max_f1 = cell.mean_f1;
                summary.features_at_max_f1 = cell.subset_size;
            }
            out.cells.push_back(std::move(cell));
        }
        summary.average_accuracy /= static_cast<double>(nested_subsets.size());
        summary.average_f1 /= static_cast<double>(nested_subsets.size());
        out.summaries.push_back(std::move(summary));
    }
    return out;
}

}  // namespace lincue
