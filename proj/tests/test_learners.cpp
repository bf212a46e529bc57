#include <doctest.h>

#include <cmath>
#include <functional>

#include "lincue/learners.hpp"
#include "lincue/rng.hpp"

using namespace lincue;

namespace {

Dataset make(const std::vector<std::vector<double>>& X, const std::vector<int>& y) {
    Dataset d;
    d.X = X;
    d.y = y;
    for (std::size_t f = 0; f < (X.empty() ? 0 : X.front().size()); ++f)
        d.feature_names.push_back("f" + std::to_string(f));
    return d;
}

// label-copy feature plus noise columns
Dataset informative_dataset(std::size_t n, std::size_t noise_features, std::uint64_t seed) {
    Rng rng(seed);
    Dataset d;
    for (std::size_t f = 0; f < noise_features + 1; ++f) d.feature_names.push_back("f" + std::to_string(f));
    for (std::size_t i = 0; i < n; ++i) {
        const int label = i % 2 == 0 ? 0 : 1;
        std::vector<double> row;
        row.push_back(static_cast<double>(label));
        for (std::size_t f = 0; f < noise_features; ++f) row.push_back(rng.normal());
        d.X.push_back(std::move(row));
        d.y.push_back(label);
    }
    return d;
}

int tree_depth(const TreeNode* node) {
    if (node->is_leaf()) return 0;
    return 1 + std::max(tree_depth(node->left.get()), tree_depth(node->right.get()));
}

double training_accuracy(const Model& m, const Dataset& d) {
    const auto pred = labels_from_proba(predict_proba(m, d.X));
    std::size_t hits = 0;
    for (std::size_t i = 0; i < d.y.size(); ++i) hits += pred[i] == d.y[i];
    return static_cast<double>(hits) / static_cast<double>(d.y.size());
}

// brute-force best-split oracle with the same tie-break rule
struct OracleSplit {
    int feature = -1;
    double threshold = 0.0;
    double delta = -1.0;
};
OracleSplit exhaustive_best_split(const Dataset& d, Impurity imp) {
    OracleSplit best;
    const std::size_t n = d.n();
    for (std::size_t f = 0; f < d.d(); ++f) {
        std::vector<double> vals;
        for (const auto& row : d.X) vals.push_back(row[f]);
        std::vector<double> sorted = vals;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 1; i < n; ++i) {
            if (sorted[i] == sorted[i - 1]) continue;
            const double thr = 0.5 * (sorted[i - 1] + sorted[i]);
            double l0 = 0, l1 = 0, r0 = 0, r1 = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (vals[j] <= thr) (d.y[j] ? l1 : l0) += 1;
                else (d.y[j] ? r1 : r0) += 1;
            }
            const double delta = impurity_decrease(imp, l0, l1, r0, r1, static_cast<double>(n));
            if (delta > best.delta) best = {static_cast<int>(f), thr, delta};
        }
    }
    return best;
}

void collect_leaves(const TreeNode* node, std::vector<const TreeNode*>& out) {
    if (node->is_leaf()) {
        out.push_back(node);
        return;
    }
    collect_leaves(node->left.get(), out);
    collect_leaves(node->right.get(), out);
}

// Eq-2 style bookkeeping check: sum of p(t)*delta_i over internal nodes must
// telescope to i(root) - sum p(leaf) i(leaf).
double importance_total(const TreeModel& tree) {
    double total = 0.0;
    for (double v : tree_importances(tree)) total += v;
    return total;
}

double leaf_decomposition(const TreeModel& tree) {
    std::vector<const TreeNode*> leaves;
    collect_leaves(tree.root.get(), leaves);
    double acc = tree.root->node_impurity;
    const double n = static_cast<double>(tree.n_training_samples);
    for (const TreeNode* leaf : leaves)
        acc -= (static_cast<double>(leaf->n_samples) / n) * leaf->node_impurity;
    return acc;
}

}  // namespace

TEST_CASE("impurity values and decreases") {
    CHECK(impurity_value(Impurity::Gini, 4, 4) == doctest::Approx(0.5));
    CHECK(impurity_value(Impurity::Entropy, 4, 4) == doctest::Approx(1.0));
    CHECK(impurity_value(Impurity::Gini, 8, 0) == doctest::Approx(0.0));

    SUBCASE("pure parent has zero decrease for every split") {
        CHECK(impurity_decrease(Impurity::Gini, 4, 0, 4, 0, 8) == doctest::Approx(0.0));
        CHECK(impurity_decrease(Impurity::Entropy, 1, 0, 7, 0, 8) == doctest::Approx(0.0));
    }
    SUBCASE("perfect split of a balanced parent, hand arithmetic") {
        CHECK(impurity_decrease(Impurity::Gini, 4, 0, 0, 4, 8) == doctest::Approx(0.5));
        CHECK(impurity_decrease(Impurity::Entropy, 4, 0, 0, 4, 8) == doctest::Approx(1.0));
    }
    SUBCASE("global-N reference shrinks the decrease at depth") {
        // same split, children weighted by N=16 instead of node size 8
        const double per_node = impurity_decrease(Impurity::Gini, 2, 2, 2, 2, 8);
        const double global_n = impurity_decrease(Impurity::Gini, 2, 2, 2, 2, 16);
        CHECK(global_n > per_node);  // subtracted child terms are halved
    }
}

TEST_CASE("decision tree") {
    SUBCASE("separable 1-D data gives a depth-1 tree") {
        const Dataset d = make({{0}, {1}, {2}, {10}, {11}, {12}}, {0, 0, 0, 1, 1, 1});
        const TreeModel tree = train_tree(d, TreeParams{}, 1);
        CHECK(tree_depth(tree.root.get()) == 1);
        CHECK(tree.root->feature == 0);
        CHECK(tree.root->threshold == doctest::Approx(6.0));
        CHECK(training_accuracy(Model(train_tree(d, TreeParams{}, 1)), d) == doctest::Approx(1.0));
    }
    SUBCASE("XOR needs depth 2 and zero-gain root split") {
        const Dataset d = make({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {0, 0, 1, 1});
        TreeParams params;
        params.max_depth = 2;
        CHECK(training_accuracy(Model(train_tree(d, params, 1)), d) == doctest::Approx(1.0));
    }
    SUBCASE("8-point fixture matches the exhaustive split oracle") {
        Rng rng(99);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::vector<double>> X;
            std::vector<int> y;
            for (int i = 0; i < 8; ++i) {
                X.push_back({rng.uniform(0, 10), rng.uniform(0, 10), rng.uniform(0, 10)});
                y.push_back(static_cast<int>(rng.uniform_below(2)));
            }
            bool has0 = false, has1 = false;
            for (int v : y) (v ? has1 : has0) = true;
            if (!has0 || !has1) continue;
            const Dataset d = make(X, y);
            const TreeModel tree = train_tree(d, TreeParams{}, 7);
            const OracleSplit oracle = exhaustive_best_split(d, Impurity::Gini);
            REQUIRE(!tree.root->is_leaf());
            CHECK(tree.root->feature == oracle.feature);
            CHECK(tree.root->threshold == doctest::Approx(oracle.threshold));
        }
    }
    SUBCASE("max_depth and min_samples_leaf are honored") {
        const Dataset d = informative_dataset(64, 3, 5);
        TreeParams params;
        params.max_depth = 2;
        CHECK(tree_depth(train_tree(d, params, 3).root.get()) <= 2);
        params.max_depth = -1;
        params.min_samples_leaf = 10;
        std::vector<const TreeNode*> leaves;
        const TreeModel tree = train_tree(d, params, 3);
        collect_leaves(tree.root.get(), leaves);
        for (const TreeNode* leaf : leaves) CHECK(leaf->n_samples >= 10);
    }
    SUBCASE("training requires both classes") {
        CHECK_THROWS_AS(train_tree(make({{0}, {1}}, {1, 1}), TreeParams{}, 1), LearnerError);
        CHECK_THROWS_AS(train_tree(make({{0}, {std::nan("")}}, {0, 1}), TreeParams{}, 1),
                        LearnerError);
    }
}

TEST_CASE("tree importance decomposition (Eq-2 bookkeeping)") {
    Rng rng(1234);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::vector<double>> X;
        std::vector<int> y;
        const int n = 10 + static_cast<int>(rng.uniform_below(30));
        for (int i = 0; i < n; ++i) {
            X.push_back({rng.uniform(0, 4), rng.uniform(0, 4), rng.normal()});
            y.push_back(static_cast<int>(rng.uniform_below(2)));
        }
        bool has0 = false, has1 = false;
        for (int v : y) (v ? has1 : has0) = true;
        if (!has0 || !has1) continue;
        const TreeModel tree = train_tree(make(X, y), TreeParams{}, trial);
        CHECK(importance_total(tree) == doctest::Approx(leaf_decomposition(tree)).epsilon(1e-10));
    }
}

TEST_CASE("random forest") {
    SUBCASE("label-copy feature dominates importances across seeds") {
        int wins = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Dataset d = informative_dataset(250, 4, 100 + seed);
            ForestParams params;
            params.n_trees = 100;
            const ForestModel forest = train_forest(d, params, seed);
            if (forest.importances[0] > 0.8) ++wins;
        }
        CHECK(wins >= 9);
    }
    SUBCASE("single-tree forest equals that tree's accumulation") {
        const Dataset d = informative_dataset(60, 3, 17);
        ForestParams params;
        params.n_trees = 1;
        const ForestModel forest = train_forest(d, params, 5);
        std::vector<double> raw = tree_importances(forest.trees[0]);
        double total = 0.0;
        for (double v : raw) total += v;
        REQUIRE(total > 0.0);
        for (std::size_t f = 0; f < raw.size(); ++f)
            CHECK(forest.importances[f] == doctest::Approx(raw[f] / total).epsilon(1e-12));
    }
    SUBCASE("all-constant features: zero importance, majority-class prediction") {
        Dataset d = make({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}, {1, 1, 1, 0, 0});
        const ForestModel forest = train_forest(d, ForestParams{}, 9);
        for (double imp : forest.importances) CHECK(imp == 0.0);
        // each tree is a single bootstrap leaf; the ensemble mean sits near the prior
        for (double p : predict_proba(forest, d.X)) {
            CHECK(p > 0.5);
            CHECK(p < 0.72);
        }
    }
    SUBCASE("normalized importances sum to 1") {
        const Dataset d = informative_dataset(80, 5, 3);
        const ForestModel forest = train_forest(d, ForestParams{}, 11);
        double total = 0.0;
        for (double v : forest.importances) {
            total += v;
            CHECK(v >= 0.0);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("determinism: same seed, same model") {
        const Dataset d = informative_dataset(70, 4, 21);
        ForestParams params;
        params.n_trees = 25;
        const ForestModel a = train_forest(d, params, 77);
        const ForestModel b = train_forest(d, params, 77);
        CHECK(a.importances == b.importances);
        CHECK(predict_proba(a, d.X) == predict_proba(b, d.X));
        const ForestModel c = train_forest(d, params, 78);
        CHECK(predict_proba(a, d.X) != predict_proba(c, d.X));
    }
}

TEST_CASE("logistic regression") {
    SUBCASE("separable data gets the right weight sign") {
        const Dataset d = make({{-2}, {-1.5}, {-1}, {1}, {1.5}, {2}}, {0, 0, 0, 1, 1, 1});
        const LinearModel m = train_logistic(d, LogisticParams{}, 0);
        CHECK(m.weights[0] > 0.0);
        CHECK(training_accuracy(Model(train_logistic(d, LogisticParams{}, 0)), d) == 1.0);
    }
    SUBCASE("C -> 0 shrinks weights to zero") {
        const Dataset d = make({{-2}, {-1}, {1}, {2}}, {0, 0, 1, 1});
        const LinearModel m = train_logistic(d, LogisticParams{1e-6, 500, 1e-9}, 0);
        CHECK(std::fabs(m.weights[0]) < 1e-2);
    }
    SUBCASE("reaches the optimum of the intended objective (independent FD oracle)") {
        const std::vector<std::vector<double>> X = {{0.5, 1.0},  {-1.2, 0.3}, {0.1, -0.7},
                                                    {1.4, -0.2}, {-0.6, -1.1}, {0.9, 0.8}};
        const std::vector<int> y = {1, 0, 0, 1, 0, 1};
        const double C = 1.0;

        // independent loss implementation
        auto loss_at = [&](const std::vector<double>& w, double b) {
            long double acc = 0.0L;
            for (std::size_t i = 0; i < X.size(); ++i) {
                long double z = b;
                for (std::size_t j = 0; j < 2; ++j) z += w[j] * X[i][j];
                const long double s = y[i] == 1 ? 1.0L : -1.0L;
                acc += std::log(1.0L + std::exp(-s * z));
            }
            acc += (w[0] * w[0] + w[1] * w[1]) / (2.0L * C);
            return static_cast<double>(acc);
        };
        // crude finite-difference descent as the oracle optimizer
        std::vector<double> w = {0, 0};
        double b = 0.0, step = 0.5;
        for (int iter = 0; iter < 20000; ++iter) {
            const double h = 1e-7;
            std::vector<double> g(3);
            for (int j = 0; j < 2; ++j) {
                std::vector<double> wp = w, wm = w;
                wp[static_cast<std::size_t>(j)] += h;
                wm[static_cast<std::size_t>(j)] -= h;
                g[static_cast<std::size_t>(j)] = (loss_at(wp, b) - loss_at(wm, b)) / (2 * h);
            }
            g[2] = (loss_at(w, b + h) - loss_at(w, b - h)) / (2 * h);
            const double before = loss_at(w, b);
            std::vector<double> w_try = {w[0] - step * g[0], w[1] - step * g[1]};
            const double b_try = b - step * g[2];
            if (loss_at(w_try, b_try) < before) {
                w = w_try;
                b = b_try;
                step *= 1.1;
            } else {
                step *= 0.5;
                if (step < 1e-14) break;
            }
        }
        const double oracle_loss = loss_at(w, b);

        const Dataset d = make(X, y);
        const LinearModel m = train_logistic(d, LogisticParams{C, 2000, 1e-10}, 0);
        const double impl_loss = loss_at(m.weights, m.bias);
        CHECK(impl_loss == doctest::Approx(oracle_loss).epsilon(1e-6));
    }
    SUBCASE("analytic gradient matches central differences") {
        Rng rng(42);
        const std::vector<std::vector<double>> X = {{0.3, -1.2, 0.5}, {1.1, 0.2, -0.4},
                                                    {-0.9, 0.7, 1.3}, {0.2, 0.1, -1.0}};
        const std::vector<int> y = {1, 0, 1, 0};
        std::vector<double> w = {rng.normal(), rng.normal(), rng.normal()};
        const double b = rng.normal(), C = 2.0;
        const auto [loss, grad] = logistic_loss_grad(X, y, w, b, C);
        (void)loss;
        const double h = 1e-6;
        for (std::size_t j = 0; j < 4; ++j) {
            auto perturbed = [&](double delta) {
                std::vector<double> wp = w;
                double bp = b;
                if (j < 3) wp[j] += delta;
                else bp += delta;
                return logistic_loss_grad(X, y, wp, bp, C).first;
            };
            const double fd = (perturbed(h) - perturbed(-h)) / (2 * h);
            CHECK(grad[j] == doctest::Approx(fd).epsilon(1e-5));
        }
    }
}

TEST_CASE("gaussian naive bayes") {
    SUBCASE("separated blobs") {
        Rng rng(8);
        std::vector<std::vector<double>> X;
        std::vector<int> y;
        for (int i = 0; i < 40; ++i) {
            const int label = i % 2;
            X.push_back({(label ? 10.0 : 0.0) + rng.normal(), (label ? -5.0 : 5.0) + rng.normal()});
            y.push_back(label);
        }
        const Dataset d = make(X, y);
        CHECK(training_accuracy(Model(train_gnb(d)), d) == doctest::Approx(1.0));
    }
    SUBCASE("identical class distributions give the priors") {
        const Dataset d = make({{1}, {2}, {1}, {2}, {1}, {2}}, {0, 0, 1, 1, 1, 1});
        const GnbModel m = train_gnb(d);
        // class-conditional distributions identical -> posterior = prior(1) = 2/3
        const auto proba = predict_proba(m, {{1.0}, {2.0}, {1.5}});
        for (double p : proba) CHECK(p == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
    }
    SUBCASE("4-point fixture, hand Bayes arithmetic") {
        const Dataset d = make({{0}, {2}, {10}, {12}}, {0, 0, 1, 1});
        const GnbModel m = train_gnb(d);
        CHECK(m.means[0][0] == doctest::Approx(1.0));
        CHECK(m.means[1][0] == doctest::Approx(11.0));
        CHECK(m.variances[0][0] == doctest::Approx(1.0));
        // midpoint is exactly ambiguous
        CHECK(predict_proba(m, {{6.0}})[0] == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(predict_proba(m, {{1.0}})[0] < 1e-9);
        CHECK(predict_proba(m, {{11.0}})[0] > 1.0 - 1e-9);
    }
}

TEST_CASE("mlp") {
    SUBCASE("gradient matches central differences") {
        Rng rng(5);
        MlpModel m;
        m.in_dim = 4;
        m.hidden = 3;
        m.w1.resize(12);
        m.b1.resize(3);
        m.w2.resize(3);
        for (auto& v : m.w1) v = rng.normal() * 0.5;
        for (auto& v : m.b1) v = rng.normal() * 0.5;
        for (auto& v : m.w2) v = rng.normal() * 0.5;
        m.b2 = rng.normal() * 0.5;
        std::vector<std::vector<double>> X;
        std::vector<int> y;
        for (int i = 0; i < 6; ++i) {
            X.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
            y.push_back(i % 2);
        }
        const double l2 = 1e-3;
        const auto [loss, grad] = mlp_loss_grad(m, X, y, l2);
        (void)loss;
        REQUIRE(grad.size() == 12 + 3 + 3 + 1);

        auto flat_loss = [&](const std::vector<double>& theta) {
            MlpModel t = m;
            std::size_t k = 0;
            for (auto& v : t.w1) v = theta[k++];
            for (auto& v : t.b1) v = theta[k++];
            for (auto& v : t.w2) v = theta[k++];
            t.b2 = theta[k++];
            return mlp_loss_grad(t, X, y, l2).first;
        };
        std::vector<double> theta;
        theta.insert(theta.end(), m.w1.begin(), m.w1.end());
        theta.insert(theta.end(), m.b1.begin(), m.b1.end());
        theta.insert(theta.end(), m.w2.begin(), m.w2.end());
        theta.push_back(m.b2);

        const double h = 1e-5;
        double max_rel = 0.0;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            std::vector<double> tp = theta, tm = theta;
            tp[j] += h;
            tm[j] -= h;
            const double fd = (flat_loss(tp) - flat_loss(tm)) / (2 * h);
            const double rel = std::fabs(fd - grad[j]) / std::max(1.0, std::fabs(fd));
            max_rel = std::max(max_rel, rel);
        }
        CHECK(max_rel < 1e-4);
    }
    SUBCASE("XOR is learnable for some seed in a fixed set") {
        const Dataset d = make({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, {0, 0, 1, 1});
        MlpParams params;
        params.hidden_width = 4;
        params.learning_rate = 0.5;
        params.epochs = 5000;
        params.l2 = 1e-5;
        bool solved = false;
        for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
            if (training_accuracy(Model(train_mlp(d, params, seed)), d) == 1.0) {
                solved = true;
                break;
            }
        }
        CHECK(solved);
    }
    SUBCASE("zero-epoch model predicts near chance") {
        const Dataset d = make({{-1}, {1}, {-2}, {2}}, {0, 1, 0, 1});
        MlpParams params;
        params.epochs = 0;
        const MlpModel m = train_mlp(d, params, 3);
        for (double p : predict_proba(m, d.X)) CHECK(std::fabs(p - 0.5) < 0.25);
    }
    SUBCASE("divergence is reported") {
        const Dataset d = make({{1e3}, {-1e3}, {2e3}, {-2e3}}, {1, 0, 1, 0});
        MlpParams params;
        params.learning_rate = 1e6;
        params.epochs = 200;
        CHECK_THROWS_WITH_AS(train_mlp(d, params, 1), "diverged", LearnerError);
    }
}

TEST_CASE("uniform interface and prediction contracts") {
    const Dataset d = informative_dataset(40, 2, 2);
    for (LearnerKind kind : {LearnerKind::DecisionTree, LearnerKind::RandomForest,
                             LearnerKind::Logistic, LearnerKind::GaussianNb, LearnerKind::Mlp}) {
        const Model m = train_model(kind, d, HyperParams{{"epochs", 200}}, 4);
        const auto proba = predict_proba(m, d.X);
        REQUIRE(proba.size() == d.n());
        for (double p : proba) {
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
        }
        CHECK_THROWS_AS(predict_proba(m, {{1.0}}), LearnerError);  // width mismatch
    }
    CHECK(parse_learner("mlp") == LearnerKind::Mlp);
    CHECK_THROWS_AS(parse_learner("svm"), LearnerError);
    CHECK(std::string(learner_name(LearnerKind::GaussianNb)) == "nb");
}

TEST_CASE("model JSON round trip") {
    const Dataset d = informative_dataset(30, 2, 6);
    const std::vector<std::vector<double>> probe = {{0.5, 0.1, -0.3}, {1.0, -1.0, 0.7}};
    for (LearnerKind kind : {LearnerKind::DecisionTree, LearnerKind::RandomForest,
                             LearnerKind::Logistic, LearnerKind::GaussianNb, LearnerKind::Mlp}) {
        const Model m = train_model(kind, d, HyperParams{{"n_trees", 5}, {"epochs", 50}}, 13);
        const std::string text = model_to_json(m);
        const Model restored = model_from_json(text);
        CHECK(predict_proba(m, probe) == predict_proba(restored, probe));
        CHECK(model_to_json(restored) == text);
    }
    CHECK_THROWS_AS(model_from_json("{\"format\":\"other\"}"), std::exception);
}
