// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Criteria 7-9 run against the bundled dataset through the same
// code paths the CLI uses.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lincue/artifacts.hpp"
#include "lincue/corpus.hpp"
#include "lincue/evaluation.hpp"
#include "lincue/features.hpp"
#include "lincue/io_util.hpp"
#include "lincue/learners.hpp"
#include "lincue/lexicon.hpp"
#include "lincue/lingpipe.hpp"
#include "lincue/rng.hpp"
#include "lincue/selection.hpp"
#include "lincue/special.hpp"
#include "lincue/stats.hpp"

#ifndef LINCUE_DATA_DIR
#define LINCUE_DATA_DIR "data"
#endif
#ifndef LINCUE_CLI_PATH
#define LINCUE_CLI_PATH "lincue"
#endif

using namespace lincue;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %-34s %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_ovl_closed_form() {
    const auto t0 = std::chrono::steady_clock::now();
    auto pdf = [](double mu) {
        return [mu](double x) {
            const double z = x - mu;
            return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
        };
    };
    const double got = overlap_integral(pdf(0.0), pdf(1.0), -8.0, 9.0);
    const double expected = 2.0 * normal_cdf(-0.5);
    const double elapsed = seconds_since(t0);
    const bool pass = std::fabs(got - expected) <= 0.005 && elapsed < 1.0;
    report(1, "OVL closed-form check", pass,
           "got " + fmt(got) + " vs 2*Phi(-1/2) = " + fmt(expected) + ", " + fmt(elapsed) + " s");
}

void criterion_2_kde_normalization() {
    Rng rng(20250809);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 20 + static_cast<int>(rng.uniform_below(181));
        std::vector<double> sample;
        const double scale = std::exp(rng.uniform(-1.0, 3.0));
        const double shift = rng.uniform(-50.0, 50.0);
        for (int i = 0; i < n; ++i) sample.push_back(shift + scale * rng.normal());
        const DensityEstimate kde = kde_fit(sample);
        const double integral =
            overlap_integral([&](double x) { return kde.evaluate(x); },
                             [&](double x) { return kde.evaluate(x); }, kde.grid_lo(), kde.grid_hi());
        worst = std::max(worst, std::fabs(integral - 1.0));
    }
    report(2, "KDE normalization (50 samples)", worst <= 1e-3, "max |integral - 1| = " + fmt(worst));
}

void criterion_3_tree_decomposition() {
    Rng rng(333);
    double worst = 0.0;
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 8 + static_cast<int>(rng.uniform_below(40));
        Dataset d;
        d.feature_names = {"a", "b", "c"};
        for (int i = 0; i < n; ++i) {
            d.X.push_back({rng.uniform(0, 4), rng.normal(), rng.uniform(0, 2)});
            d.y.push_back(static_cast<int>(rng.uniform_below(2)));
        }
        bool has0 = false, has1 = false;
        for (int v : d.y) (v ? has1 : has0) = true;
        if (!has0 || !has1) continue;
        const TreeParams params{.max_depth = -1, .min_samples_leaf = 1,
                                .impurity = trial % 2 ? Impurity::Entropy : Impurity::Gini,
                                .feature_subsample = false};
        const TreeModel tree = train_tree(d, params, static_cast<std::uint64_t>(trial));

        double total = 0.0;
        for (double v : tree_importances(tree)) total += v;
        std::function<double(const TreeNode*)> leaf_term = [&](const TreeNode* node) -> double {
            if (node->is_leaf())
                return (static_cast<double>(node->n_samples) /
                        static_cast<double>(tree.n_training_samples)) *
                       node->node_impurity;
            return leaf_term(node->left.get()) + leaf_term(node->right.get());
        };
        const double expected = tree.root->node_impurity - leaf_term(tree.root.get());
        worst = std::max(worst, std::fabs(total - expected));
        ++checked;
    }
    report(3, "tree importance decomposition", worst <= 1e-10 && checked >= 90,
           "max residual " + fmt(worst * 1e12) + "e-12 over " + std::to_string(checked) + " trees");
}

void criterion_4_gradient_checks() {
    Rng rng(444);
    double worst = 0.0;
    for (int config = 0; config < 20; ++config) {
        const std::size_t n = 4 + rng.uniform_below(6);
        const std::size_t d = 2 + rng.uniform_below(4);
        std::vector<std::vector<double>> X;
        std::vector<int> y;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row;
            for (std::size_t j = 0; j < d; ++j) row.push_back(rng.normal());
            X.push_back(row);
            y.push_back(static_cast<int>(rng.uniform_below(2)));
        }

        {  // logistic
            std::vector<double> w;
            for (std::size_t j = 0; j < d; ++j) w.push_back(rng.normal());
            const double b = rng.normal();
            const double C = std::exp(rng.uniform(-1.0, 1.0));
            const auto [loss, grad] = logistic_loss_grad(X, y, w, b, C);
            (void)loss;
            const double h = 1e-6;
            for (std::size_t j = 0; j <= d; ++j) {
                auto at = [&](double delta) {
                    std::vector<double> wp = w;
                    double bp = b;
                    if (j < d) wp[j] += delta;
                    else bp += delta;
                    return logistic_loss_grad(X, y, wp, bp, C).first;
                };
                const double fd = (at(h) - at(-h)) / (2.0 * h);
                worst = std::max(worst, std::fabs(fd - grad[j]) / std::max(1.0, std::fabs(fd)));
            }
        }
        {  // mlp
            MlpModel m;
            m.in_dim = d;
            m.hidden = 2 + static_cast<int>(rng.uniform_below(3));
            const std::size_t hdim = static_cast<std::size_t>(m.hidden);
            m.w1.resize(hdim * d);
            m.b1.resize(hdim);
            m.w2.resize(hdim);
            for (auto& v : m.w1) v = rng.normal() * 0.7;
            for (auto& v : m.b1) v = rng.normal() * 0.7;
            for (auto& v : m.w2) v = rng.normal() * 0.7;
            m.b2 = rng.normal() * 0.7;
            const double l2 = std::exp(rng.uniform(-8.0, -2.0));
            const auto [loss, grad] = mlp_loss_grad(m, X, y, l2);
            (void)loss;
            std::vector<double> theta;
            theta.insert(theta.end(), m.w1.begin(), m.w1.end());
            theta.insert(theta.end(), m.b1.begin(), m.b1.end());
            theta.insert(theta.end(), m.w2.begin(), m.w2.end());
            theta.push_back(m.b2);
            auto at = [&](const std::vector<double>& t) {
                MlpModel mm = m;
                std::size_t k = 0;
                for (auto& v : mm.w1) v = t[k++];
                for (auto& v : mm.b1) v = t[k++];
                for (auto& v : mm.w2) v = t[k++];
                mm.b2 = t[k++];
                return mlp_loss_grad(mm, X, y, l2).first;
            };
            const double h = 1e-5;
            for (std::size_t j = 0; j < theta.size(); ++j) {
                std::vector<double> tp = theta, tm = theta;
                tp[j] += h;
                tm[j] -= h;
                const double fd = (at(tp) - at(tm)) / (2.0 * h);
                worst = std::max(worst, std::fabs(fd - grad[j]) / std::max(1.0, std::fabs(fd)));
            }
        }
    }
    report(4, "gradient checks (LR + MLP)", worst < 1e-4, "max relative error " + fmt(worst * 1e6) + "e-6");
}

bool nested_sets_ok(const RfeTrace& trace) {
    const auto sets = trace.nested_sets();
    // F0 is the empty set; produced sets go from the target size up to D
    if (sets.front().size() != trace.target_size) return false;
    if (sets.back().size() != trace.n_features) return false;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (sets[i].size() != trace.target_size + i) return false;
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            for (std::size_t f : sets[i]) {
                if (std::find(sets[j].begin(), sets[j].end(), f) == sets[j].end()) return false;
            }
        }
    }
    return true;
}

void criterion_5_rfe_nesting(const FeatureMatrix& bundled) {
    bool pass = true;
    // synthetic traces
    Rng rng(555);
    for (int trial = 0; trial < 3; ++trial) {
        Dataset d;
        for (int f = 0; f < 6; ++f) d.feature_names.push_back("f" + std::to_string(f));
        for (int i = 0; i < 50; ++i) {
            std::vector<double> row;
            for (int f = 0; f < 6; ++f) row.push_back(rng.normal());
            row[0] += d.y.size() % 2 ? 1.5 : -1.5;
            d.X.push_back(row);
            d.y.push_back(i % 2);
        }
        pass = pass && nested_sets_ok(rfe(d, 1, static_cast<std::uint64_t>(trial)));
        pass = pass && nested_sets_ok(rfe(d, 3, static_cast<std::uint64_t>(trial)));
    }
    // bundled-dataset trace
    const RfeTrace trace = rfe(dataset_from_matrix(bundled), 1, 42);
    pass = pass && nested_sets_ok(trace);
    const auto first = trace.first_appearance();
    std::set<int> distinct(first.begin(), first.end());
    pass = pass && distinct.size() == trace.n_features;
    report(5, "RFE nesting (Eq-4)", pass, std::to_string(7) + " traces checked exhaustively");
}

void criterion_6_boruta_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    int good_runs = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(9000 + seed);
        Dataset d;
        d.feature_names.push_back("signal");
        for (int f = 0; f < 9; ++f) d.feature_names.push_back("noise" + std::to_string(f));
        std::vector<int> labels;
        for (int i = 0; i < 110; ++i) labels.push_back(i % 2);
        // noise columns are independent permutations of the label column
        std::vector<std::vector<double>> noise(9, std::vector<double>(110));
        for (int f = 0; f < 9; ++f) {
            const auto perm = rng.permutation(110);
            for (int i = 0; i < 110; ++i) noise[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)] =
                static_cast<double>(labels[perm[static_cast<std::size_t>(i)]]);
        }
        for (int i = 0; i < 110; ++i) {
            std::vector<double> row;
            row.push_back(static_cast<double>(labels[static_cast<std::size_t>(i)]));
            for (int f = 0; f < 9; ++f) row.push_back(noise[static_cast<std::size_t>(f)][static_cast<std::size_t>(i)]);
            d.X.push_back(row);
            d.y.push_back(labels[static_cast<std::size_t>(i)]);
        }
        BorutaParams params;  // 100 iterations, alpha 0.05
        const auto verdicts = boruta(d, params, seed);
        int noise_rejected = 0;
        for (std::size_t f = 1; f < verdicts.size(); ++f)
            noise_rejected += verdicts[f].zone == BorutaZone::NotRelevant;
        if (verdicts[0].zone == BorutaZone::Relevant && noise_rejected >= 8) ++good_runs;
    }
    const double elapsed = seconds_since(t0);
    report(6, "Boruta synthetic oracle", good_runs >= 9 && elapsed < 120.0,
           std::to_string(good_runs) + "/10 runs clean, " + fmt(elapsed) + " s");
}

void criterion_7_paper_findings(const FeatureMatrix& bundled) {
    const Dataset data = dataset_from_matrix(bundled);

    // (a) top-5 RF importances vs the reference top-5
    SelectionParams sp;
    const auto ranked = rank_by_rf_importance(data, sp.ranking_forest, 42);
    const std::set<std::string> reference_top5 = {"redundancy", "pausality", "avg_sentence_length",
                                                  "n_adjectives", "n_words"};
    int shared = 0;
    for (int i = 0; i < 5; ++i) shared += reference_top5.count(ranked[static_cast<std::size_t>(i)].feature) > 0;

    // (b) Spearman between importance and OVL, full and sparse-excluded
    std::vector<double> importance(kFeatureCount, 0.0);
    for (const auto& r : ranked) importance[r.feature_index] = r.importance;
    const auto stats_rows = compute_stats_rows(bundled);
    std::vector<double> ovl_values(kFeatureCount, 0.0);
    for (std::size_t f = 0; f < kFeatureCount; ++f) ovl_values[f] = stats_rows[f].ovl;
    const double rho_all = spearman(importance, ovl_values).statistic;
    std::vector<double> imp_excl, ovl_excl;
    const auto& sparse = sparse_feature_names();
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
        if (std::find(sparse.begin(), sparse.end(), feature_names()[f]) != sparse.end()) continue;
        imp_excl.push_back(importance[f]);
        ovl_excl.push_back(ovl_values[f]);
    }
    const double rho_excl = spearman(imp_excl, ovl_excl).statistic;

    // (c) our OVL ordering vs the reference ordering
    const std::vector<std::string> reference_ovl_order = {
        "pausality",       "n_typos",           "n_words",        "n_adjectives",
        "redundancy",      "avg_sentence_length", "n_passive_voice", "n_clauses",
        "n_verbs",         "lexical_diversity", "avg_np_length",  "emotiveness",
        "content_diversity", "n_modal_verbs",   "avg_word_length"};
    std::vector<double> reference_rank(kFeatureCount, 0.0);
    for (std::size_t r = 0; r < reference_ovl_order.size(); ++r) {
        const auto it = std::find(feature_names().begin(), feature_names().end(),
                                  reference_ovl_order[r]);
        reference_rank[static_cast<std::size_t>(it - feature_names().begin())] =
            static_cast<double>(r + 1);
    }
    const double rho_order = spearman(reference_rank, ovl_values).statistic;

    const bool pass_a = shared >= 3;
    const bool pass_b = rho_all < 0.0 && rho_excl < rho_all;
    const bool pass_c = rho_order >= 0.5;
    report(7, "paper-finding reproduction", pass_a && pass_b && pass_c,
           "top5 shared " + std::to_string(shared) + "/5, rho " + fmt(rho_all) + " -> " +
               fmt(rho_excl) + " excl, ordering rho " + fmt(rho_order));
}

void criterion_8_classification(const FeatureMatrix& bundled) {
    const auto t0 = std::chrono::steady_clock::now();
    const RfeTrace trace = rfe(dataset_from_matrix(bundled), 1, 42);
    const EvalGrid grid = run_experiment(
        bundled, trace.nested_sets(),
        {LearnerKind::DecisionTree, LearnerKind::RandomForest, LearnerKind::Logistic,
         LearnerKind::GaussianNb, LearnerKind::Mlp},
        10, 42, default_grid_config());
    double best = 0.0;
    std::string best_desc = "none";
    for (const auto& cell : grid.cells) {
        if (cell.subset_size <= 6 && cell.mean_accuracy > best) {
            best = cell.mean_accuracy;
            best_desc = cell.classifier + " @" + std::to_string(cell.subset_size);
        }
    }
    const double elapsed = seconds_since(t0);
    report(8, "classification performance", best >= 0.70 && elapsed < 600.0,
           "best cv accuracy " + fmt(best) + " (" + best_desc + " features), " + fmt(elapsed) + " s");
}

bool dirs_identical(const fs::path& a, const fs::path& b) {
    std::map<std::string, fs::path> files_a, files_b;
    for (const auto& e : fs::recursive_directory_iterator(a))
        if (e.is_regular_file()) files_a[fs::relative(e.path(), a).string()] = e.path();
    for (const auto& e : fs::recursive_directory_iterator(b))
        if (e.is_regular_file()) files_b[fs::relative(e.path(), b).string()] = e.path();
    if (files_a.size() != files_b.size()) return false;
    for (const auto& [rel, path_a] : files_a) {
        const auto it = files_b.find(rel);
        if (it == files_b.end()) return false;
        if (read_file(path_a.string()) != read_file(it->second.string())) return false;
    }
    return !files_a.empty();
}

void criterion_9_determinism() {
    const fs::path base = fs::temp_directory_path() / "lincue_acceptance_runall";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string data_dir = LINCUE_DATA_DIR;
    bool pass = true;
    for (const char* out : {"a", "b"}) {
        const std::string cmd = std::string(LINCUE_CLI_PATH) + " run-all" +
                                " --input " + data_dir + "/restaurant_reviews.csv" +
                                " --outdir " + (base / out).string() + " --seed 42" +
                                " --dictionary " + data_dir + "/dict/english_words.txt" +
                                " --allowlist " + data_dir + "/allowlist/restaurant_allowlist.txt" +
                                " --lexicon-dir " + data_dir + "/lexicons" +
                                " > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) pass = false;
    }
    pass = pass && dirs_identical(base / "a", base / "b");
    report(9, "run-all determinism", pass, "two seeded runs byte-compared");
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    criterion_1_ovl_closed_form();
    criterion_2_kde_normalization();
    criterion_3_tree_decomposition();
    criterion_4_gradient_checks();

    // bundled dataset pipeline, shared by criteria 5, 7, 8
    const std::string data_dir = LINCUE_DATA_DIR;
    const Corpus corpus = load_corpus(data_dir + "/restaurant_reviews.csv");
    const Analyzer analyzer(load_lexicons(data_dir + "/lexicons"),
                            load_dictionary(data_dir + "/dict/english_words.txt",
                                            data_dir + "/allowlist/restaurant_allowlist.txt"));
    const FeatureMatrix bundled = extract_matrix(corpus, analyzer);

    criterion_5_rfe_nesting(bundled);
    criterion_6_boruta_oracle();
    criterion_7_paper_findings(bundled);
    criterion_8_classification(bundled);
    criterion_9_determinism();

    std::printf("%s: %d/9 criteria passed in %.1f s\n", g_failures == 0 ? "OK" : "FAILED",
                9 - g_failures, seconds_since(t0));
    return g_failures == 0 ? 0 : 1;
}
