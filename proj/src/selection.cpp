#include "lincue/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lincue/evaluation.hpp"
#include "lincue/log.hpp"
#include "lincue/rng.hpp"

namespace lincue {

namespace {
constexpr std::uint64_t kRfeTag = 0x726665ULL;
constexpr std::uint64_t kShadowTag = 0x736861646f77ULL;
constexpr std::uint64_t kBorutaForestTag = 0x62666f72ULL;
constexpr std::uint64_t kRankTag = 0x72616e6bULL;
}  // namespace

// ---------------------------------------------------------------------------
// RFE
// ---------------------------------------------------------------------------

std::vector<std::vector<std::size_t>> RfeTrace::nested_sets() const {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::size_t> cur = selected;  // already sorted
    sets.push_back(cur);
    for (auto it = elimination_order.rbegin(); it != elimination_order.rend(); ++it) {
        cur.insert(std::lower_bound(cur.begin(), cur.end(), *it), *it);
        sets.push_back(cur);
    }
    return sets;
}

std::vector<int> RfeTrace::first_appearance() const {
    std::vector<int> out(n_features, static_cast<int>(target_size));
    const std::size_t rounds = elimination_order.size();
    for (std::size_t r = 0; r < rounds; ++r) {
        // eliminated in round r+1 -> survives only in sets of size D-r and up
        out[elimination_order[r]] = static_cast<int>(n_features - r);
    }
    return out;
}

RfeTrace rfe(const Dataset& data, std::size_t target_size, std::uint64_t seed) {
    data.validate_for_training();
    const std::size_t d = data.d();
    if (target_size < 1 || target_size > d)
        throw SelectionError("rfe: target_size must be in [1, n_features]");

    // 9-point logarithmic C grid, ascending
    std::vector<double> c_grid;
    for (int e = -4; e <= 4; ++e) c_grid.push_back(std::pow(10.0, e));

    const Standardizer standardizer = Standardizer::fit(data.X);
    const std::vector<std::vector<double>> x_std = standardizer.transform(data.X);

    std::vector<bool> constant(d, false);
    for (std::size_t f = 0; f < d; ++f) {
        constant[f] = std::all_of(data.X.begin(), data.X.end(),
                                  [&](const auto& row) { return row[f] == data.X.front()[f]; });
    }

    RfeTrace trace;
    trace.n_features = d;
    trace.target_size = target_size;

    std::vector<std::size_t> remaining(d);
    std::iota(remaining.begin(), remaining.end(), 0);

    std::size_t round = 0;
    while (remaining.size() > target_size) {
        ++round;

        // constant columns leave first, lowest index first
        const auto const_it = std::find_if(remaining.begin(), remaining.end(),
                                           [&](std::size_t f) { return constant[f]; });
        if (const_it != remaining.end()) {
            trace.elimination_order.push_back(*const_it);
            trace.chosen_c.push_back(std::numeric_limits<double>::quiet_NaN());
            remaining.erase(const_it);
            continue;
        }

        Dataset sub;
        sub.y = data.y;
        sub.feature_names.reserve(remaining.size());
        for (std::size_t f : remaining) sub.feature_names.push_back(data.feature_names.empty()
                                                                        ? "f" + std::to_string(f)
                                                                        : data.feature_names[f]);
        sub.X.reserve(data.n());
        for (std::size_t i = 0; i < data.n(); ++i) {
            std::vector<double> row;
            row.reserve(remaining.size());
            for (std::size_t f : remaining) row.push_back(x_std[i][f]);
            sub.X.push_back(std::move(row));
        }

        const std::vector<Fold> folds = stratified_kfold(
            sub.y, 5, Rng::derive_key(seed, {kRfeTag, static_cast<std::uint64_t>(round)}));

        double best_c = c_grid.front();
        double best_accuracy = -1.0;
        for (double c : c_grid) {
            double acc_sum = 0.0;
            for (const auto& fold : folds) {
                const Dataset train = sub.subset_rows(fold.train);
                const Dataset test = sub.subset_rows(fold.test);
                const LinearModel m = train_logistic(train, LogisticParams{c, 500, 1e-6}, seed);
                const auto pred = labels_from_proba(predict_proba(m, test.X));
                acc_sum += compute_metrics(test.y, pred).accuracy;
            }
            const double acc = acc_sum / static_cast<double>(folds.size());
            if (acc > best_accuracy) {
                best_accuracy = acc;
                best_c = c;
            }
        }

        const LinearModel full = train_logistic(sub, LogisticParams{best_c, 500, 1e-6}, seed);
        std::size_t weakest = 0;
        double weakest_w = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < remaining.size(); ++j) {
            const double w = std::fabs(full.weights[j]);
            if (w < weakest_w) {
                weakest_w = w;
                weakest = j;
            }
        }
        trace.elimination_order.push_back(remaining[weakest]);
        trace.chosen_c.push_back(best_c);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(weakest));
    }

    trace.selected = remaining;  // kept sorted by construction
    return trace;
}

// ---------------------------------------------------------------------------
// Boruta
// ---------------------------------------------------------------------------

const char* boruta_zone_name(BorutaZone z) {
    switch (z) {
        case BorutaZone::Relevant: return "relevant";
        case BorutaZone::Tentative: return "tentative";
        case BorutaZone::NotRelevant: return "not-relevant";
    }
    return "tentative";
}

const char* boruta_scale_name(BorutaZone z) {
    switch (z) {
        case BorutaZone::Relevant: return "High";
        case BorutaZone::Tentative: return "Medium";
        case BorutaZone::NotRelevant: return "Low";
    }
    return "Medium";
}

std::vector<BorutaVerdict> boruta(const Dataset& data, const BorutaParams& params,
                                  std::uint64_t seed) {
    data.validate_for_training();
    if (params.n_iterations < 10) throw SelectionError("boruta: need at least 10 iterations");
    const std::size_t d = data.d();
    const std::size_t n = data.n();

    std::vector<int> hits(d, 0);
    for (int it = 0; it < params.n_iterations; ++it) {
        Dataset augmented;
        augmented.y = data.y;
        augmented.X.assign(n, std::vector<double>(2 * d, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t f = 0; f < d; ++f) augmented.X[i][f] = data.X[i][f];
        // one row-permuted shadow per feature, each with its own stream
        for (std::size_t f = 0; f < d; ++f) {
            Rng rng = Rng::derive(seed, {kShadowTag, static_cast<std::uint64_t>(it),
                                         static_cast<std::uint64_t>(f)});
            const std::vector<std::size_t> perm = rng.permutation(n);
            for (std::size_t i = 0; i < n; ++i) augmented.X[i][d + f] = data.X[perm[i]][f];
        }
        augmented.feature_names.resize(2 * d);

        const ForestModel forest = train_forest(
            augmented, params.forest,
            Rng::derive_key(seed, {kBorutaForestTag, static_cast<std::uint64_t>(it)}));

        double shadow_max = 0.0;
        for (std::size_t f = d; f < 2 * d; ++f) shadow_max = std::max(shadow_max, forest.importances[f]);
        for (std::size_t f = 0; f < d; ++f)
            if (forest.importances[f] > shadow_max) ++hits[f];
    }

    const double corrected_alpha = params.alpha / static_cast<double>(d);
    std::vector<BorutaVerdict> verdicts;
    verdicts.reserve(d);
    for (std::size_t f = 0; f < d; ++f) {
        BorutaVerdict v;
        v.feature_index = f;
        v.feature = f < data.feature_names.size() ? data.feature_names[f] : "f" + std::to_string(f);
        v.hits = hits[f];
        if (binom_sf(hits[f], params.n_iterations, 0.5) < corrected_alpha)
            v.zone = BorutaZone::Relevant;
        else if (binom_cdf(hits[f], params.n_iterations, 0.5) < corrected_alpha)
            v.zone = BorutaZone::NotRelevant;
        else
            v.zone = BorutaZone::Tentative;
        verdicts.push_back(std::move(v));
    }
    return verdicts;
}

// ---------------------------------------------------------------------------
// RF ranking + report
// ---------------------------------------------------------------------------

std::vector<RankedFeature> rank_by_rf_importance(const Dataset& data, const ForestParams& params,
                                                 std::uint64_t seed) {
    const ForestModel forest = train_forest(data, params, Rng::derive_key(seed, {kRankTag}));
    std::vector<RankedFeature> ranked;
    ranked.reserve(data.d());
    for (std::size_t f = 0; f < data.d(); ++f) {
        RankedFeature r;
        r.feature_index = f;
        r.feature = f < data.feature_names.size() ? data.feature_names[f] : "f" + std::to_string(f);
        r.importance = forest.importances[f];
        ranked.push_back(std::move(r));
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
        return a.importance > b.importance;
    });
    return ranked;
}

const std::vector<std::string>& sparse_feature_names() {
    static const std::vector<std::string> names = {"n_typos", "n_passive_voice", "n_modal_verbs"};
    return names;
}

SelectionReport build_selection_report(const Dataset& data, const SelectionParams& params,
                                       std::uint64_t seed) {
    data.validate_for_training();
    const std::size_t d = data.d();

    const std::vector<RankedFeature> ranked = rank_by_rf_importance(data, params.ranking_forest, seed);
    std::vector<double> importance(d, 0.0);
    for (const auto& r : ranked) importance[r.feature_index] = r.importance;

    const RfeTrace trace = rfe(data, 1, seed);
    const std::vector<int> first_appearance = trace.first_appearance();

    const std::vector<BorutaVerdict> boruta_verdicts = boruta(data, params.boruta, seed);

    SelectionReport report;
    std::vector<double> ovl_values(d, 0.0);
    for (std::size_t f = 0; f < d; ++f) {
        FeatureReport row;
        row.feature_index = f;
        row.feature = f < data.feature_names.size() ? data.feature_names[f] : "f" + std::to_string(f);
        row.rf_importance = importance[f];

        std::vector<double> pos, neg;
        for (std::size_t i = 0; i < data.n(); ++i)
            (data.y[i] == 1 ? pos : neg).push_back(data.X[i][f]);
        const OvlResult o = ovl(kde_fit(pos), kde_fit(neg), row.feature);
        row.ovl = o.value;
        row.ovl_scale = o.scale;
        ovl_values[f] = o.value;

        const TestResult kw = kruskal_wallis(pos, neg);
        row.kw_h = kw.statistic;
        row.kw_p = kw.p_value;

        row.rfe_first_iteration = first_appearance[f];
        row.boruta_hits = boruta_verdicts[f].hits;
        row.boruta_zone = boruta_verdicts[f].zone;
        report.rows.push_back(std::move(row));
    }

    auto correlate = [](const std::vector<double>& a, const std::vector<double>& b, double& rho,
                        double& p) {
        try {
            const TestResult r = spearman(a, b);
            rho = r.statistic;
            p = r.p_value;
        } catch (const StatsError&) {
            log_warning("selection report: constant series, importance/OVL correlation set to 0");
            rho = 0.0;
            p = 1.0;
        }
    };

    correlate(importance, ovl_values, report.spearman_importance_ovl, report.spearman_importance_ovl_p);

    std::vector<double> imp_excl, ovl_excl;
    for (std::size_t f = 0; f < d; ++f) {
        const std::string& name = report.rows[f].feature;
        const auto& sparse = sparse_feature_names();
        if (std::find(sparse.begin(), sparse.end(), name) != sparse.end()) {
            report.excluded_features.push_back(name);
            continue;
        }
        imp_excl.push_back(importance[f]);
        ovl_excl.push_back(ovl_values[f]);
    }
    if (imp_excl.size() >= 3) {
        correlate(imp_excl, ovl_excl, report.spearman_importance_ovl_excl,
                  report.spearman_importance_ovl_excl_p);
    } else {
        report.spearman_importance_ovl_excl = report.spearman_importance_ovl;
        report.spearman_importance_ovl_excl_p = report.spearman_importance_ovl_p;
    }
    return report;
}

}  // namespace lincue
