#include "lincue/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lincue/rng.hpp"

namespace lincue {

// ---------------------------------------------------------------------------
// Dataset
// ---------------------------------------------------------------------------

Dataset Dataset::subset_rows(const std::vector<std::size_t>& indices) const {
    Dataset out;
    out.feature_names = feature_names;
    out.X.reserve(indices.size());
    out.y.reserve(indices.size());
    for (std::size_t i : indices) {
        out.X.push_back(X[i]);
        out.y.push_back(y[i]);
    }
    return out;
}

Dataset Dataset::subset_features(const std::vector<std::size_t>& features) const {
    Dataset out;
    out.y = y;
    for (std::size_t f : features) {
        out.feature_names.push_back(f < feature_names.size() ? feature_names[f]
                                                             : "f" + std::to_string(f));
    }
    out.X.reserve(X.size());
    for (const auto& row : X) {
        std::vector<double> r;
        r.reserve(features.size());
        for (std::size_t f : features) r.push_back(row[f]);
        out.X.push_back(std::move(r));
    }
    return out;
}

void Dataset::validate_for_training() const {
    if (n() < 2) throw LearnerError("dataset: need at least 2 rows");
    if (X.size() != y.size()) throw LearnerError("dataset: X/y length mismatch");
    bool has0 = false, has1 = false;
    for (std::size_t i = 0; i < n(); ++i) {
        if (X[i].size() != X.front().size()) throw LearnerError("dataset: ragged rows");
        for (double v : X[i])
            if (!std::isfinite(v)) throw LearnerError("dataset: non-finite feature value");
        if (y[i] == 0) has0 = true;
        else if (y[i] == 1) has1 = true;
        else throw LearnerError("dataset: labels must be 0/1");
    }
    if (!has0 || !has1) throw LearnerError("dataset: both classes must be present");
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& X) {
    Standardizer s;
    if (X.empty()) return s;
    const std::size_t d = X.front().size();
    const double n = static_cast<double>(X.size());
    s.mean.assign(d, 0.0);
    s.stdev.assign(d, 0.0);
    for (const auto& row : X)
        for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
    for (std::size_t j = 0; j < d; ++j) s.mean[j] /= n;
    for (const auto& row : X)
        for (std::size_t j = 0; j < d; ++j) {
            const double dx = row[j] - s.mean[j];
            s.stdev[j] += dx * dx;
        }
    for (std::size_t j = 0; j < d; ++j) {
        s.stdev[j] = std::sqrt(s.stdev[j] / n);
        if (s.stdev[j] == 0.0) s.stdev[j] = 1.0;
    }
    return s;
}

std::vector<std::vector<double>> Standardizer::transform(
    const std::vector<std::vector<double>>& X) const {
    std::vector<std::vector<double>> out = X;
    for (auto& row : out)
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = (row[j] - mean[j]) / stdev[j];
    return out;
}

// ---------------------------------------------------------------------------
// Impurity
// ---------------------------------------------------------------------------

double impurity_value(Impurity imp, double count0, double count1) {
    const double n = count0 + count1;
    if (n <= 0.0) return 0.0;
    const double p0 = count0 / n;
    const double p1 = count1 / n;
    if (imp == Impurity::Gini) return 1.0 - p0 * p0 - p1 * p1;
    double h = 0.0;
    if (p0 > 0.0) h -= p0 * std::log2(p0);
    if (p1 > 0.0) h -= p1 * std::log2(p1);
    return h;
}

double impurity_decrease(Impurity imp, double left0, double left1, double right0, double right1,
                         double n_ref) {
    const double nl = left0 + left1;
    const double nr = right0 + right1;
    const double parent = impurity_value(imp, left0 + right0, left1 + right1);
    return parent - (nl / n_ref) * impurity_value(imp, left0, left1) -
           (nr / n_ref) * impurity_value(imp, right0, right1);
}

// ---------------------------------------------------------------------------
// Decision tree
// ---------------------------------------------------------------------------

namespace {

struct TreeBuilder {
    const Dataset& data;
    const TreeParams& params;
    Rng& rng;

    std::unique_ptr<TreeNode> build(std::vector<std::size_t>& idx, int depth) {
        auto node = std::make_unique<TreeNode>();
        node->n_samples = idx.size();
        double c0 = 0.0, c1 = 0.0;
        for (std::size_t i : idx) (data.y[i] == 1 ? c1 : c0) += 1.0;
        node->class_counts = {c0, c1};
        node->node_impurity = impurity_value(params.impurity, c0, c1);

        const bool pure = (c0 == 0.0 || c1 == 0.0);
        const bool depth_capped = params.max_depth > 0 && depth >= params.max_depth;
        if (pure || depth_capped ||
            idx.size() < 2 * static_cast<std::size_t>(params.min_samples_leaf)) {
            return node;
        }

        const std::size_t d = data.d();
        std::vector<std::size_t> candidates;
        if (params.feature_subsample && d > 1) {
            const std::size_t k = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));
            std::vector<std::size_t> all(d);
            std::iota(all.begin(), all.end(), 0);
            for (std::size_t i = 0; i < k; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(d - i));
                std::swap(all[i], all[j]);
            }
            candidates.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k));
            std::sort(candidates.begin(), candidates.end());
        } else {
            candidates.resize(d);
            std::iota(candidates.begin(), candidates.end(), 0);
        }

        // best split: max delta-i, ties to lowest feature then lowest threshold.
        // Zero-gain splits are accepted (XOR-style patterns need them); pure
        // and unsplittable nodes were stopped above.
        double best_delta = -1.0;
        int best_feature = -1;
        double best_threshold = 0.0;

        std::vector<std::pair<double, int>> vals;  // (value, label)
        for (std::size_t f : candidates) {
            vals.clear();
            vals.reserve(idx.size());
            for (std::size_t i : idx) vals.emplace_back(data.X[i][f], data.y[i]);
            std::sort(vals.begin(), vals.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            double l0 = 0.0, l1 = 0.0;
            const double t0 = node->class_counts[0], t1 = node->class_counts[1];
            for (std::size_t i = 1; i < vals.size(); ++i) {
                (vals[i - 1].second == 1 ? l1 : l0) += 1.0;
                if (vals[i].first == vals[i - 1].first) continue;
                const double nl = l0 + l1;
                const double nr = static_cast<double>(vals.size()) - nl;
                if (nl < params.min_samples_leaf || nr < params.min_samples_leaf) continue;
                const double delta = impurity_decrease(params.impurity, l0, l1, t0 - l0, t1 - l1,
                                                       static_cast<double>(idx.size()));
                if (delta > best_delta) {
                    best_delta = delta;
                    best_feature = static_cast<int>(f);
                    best_threshold = 0.5 * (vals[i - 1].first + vals[i].first);
                }
            }
        }
        if (best_feature < 0) return node;

        std::vector<std::size_t> left_idx, right_idx;
        for (std::size_t i : idx) {
            (data.X[i][static_cast<std::size_t>(best_feature)] <= best_threshold ? left_idx
                                                                                 : right_idx)
                .push_back(i);
        }
        node->feature = best_feature;
        node->threshold = best_threshold;
        node->left = build(left_idx, depth + 1);
        node->right = build(right_idx, depth + 1);
        return node;
    }
};

}  // namespace

TreeModel train_tree(const Dataset& data, const TreeParams& params, std::uint64_t seed) {
    data.validate_for_training();
    Rng rng = Rng::derive(seed, {0x7265657453ULL});
    std::vector<std::size_t> idx(data.n());
    std::iota(idx.begin(), idx.end(), 0);
    TreeBuilder builder{data, params, rng};
    TreeModel model;
    model.root = builder.build(idx, 0);
    model.n_features = data.d();
    model.n_training_samples = data.n();
    model.impurity = params.impurity;
    return model;
}

namespace {

void accumulate_importance(const TreeNode* node, double n_total, Impurity imp, bool global_n,
                           std::vector<double>& out) {
    if (node == nullptr || node->is_leaf()) return;
    const double nt = static_cast<double>(node->n_samples);
    const double nl = static_cast<double>(node->left->n_samples);
    const double nr = static_cast<double>(node->right->n_samples);
    const double n_ref = global_n ? n_total : nt;
    const double delta = node->node_impurity - (nl / n_ref) * node->left->node_impurity -
                         (nr / n_ref) * node->right->node_impurity;
    out[static_cast<std::size_t>(node->feature)] += (nt / n_total) * delta;
    accumulate_importance(node->left.get(), n_total, imp, global_n, out);
    accumulate_importance(node->right.get(), n_total, imp, global_n, out);
}

}  // namespace

std::vector<double> tree_importances(const TreeModel& tree, bool global_n) {
    std::vector<double> out(tree.n_features, 0.0);
    accumulate_importance(tree.root.get(), static_cast<double>(tree.n_training_samples),
                          tree.impurity, global_n, out);
    return out;
}

// ---------------------------------------------------------------------------
// Random forest
// ---------------------------------------------------------------------------

ForestModel train_forest(const Dataset& data, const ForestParams& params, std::uint64_t seed) {
    data.validate_for_training();
    ForestModel model;
    model.n_features = data.d();
    model.importances.assign(data.d(), 0.0);

    TreeParams tree_params = params.tree;
    tree_params.feature_subsample = true;

    const std::size_t n = data.n();
    for (int t = 0; t < params.n_trees; ++t) {
        const std::uint64_t tree_key = Rng::derive_key(seed, {static_cast<std::uint64_t>(t)});
        Rng rng(tree_key);
        model.tree_seeds.push_back(tree_key);

        std::vector<std::size_t> boot(n);
        for (std::size_t i = 0; i < n; ++i)
            boot[i] = static_cast<std::size_t>(rng.uniform_below(n));
        std::sort(boot.begin(), boot.end());

        TreeModel tree;
        TreeBuilder builder{data, tree_params, rng};
        tree.root = builder.build(boot, 0);
        tree.n_features = data.d();
        tree.n_training_samples = n;
        tree.impurity = tree_params.impurity;

        const std::vector<double> imp = tree_importances(tree, params.global_n_weighting);
        for (std::size_t f = 0; f < imp.size(); ++f) model.importances[f] += imp[f];
        model.trees.push_back(std::move(tree));
    }

    for (double& v : model.importances) v /= static_cast<double>(params.n_trees);
    const double total = std::accumulate(model.importances.begin(), model.importances.end(), 0.0);
    if (total > 0.0)
        for (double& v : model.importances) v /= total;
    return model;
}

// ---------------------------------------------------------------------------
// Prediction
// ---------------------------------------------------------------------------

namespace {

void check_width(std::size_t expected, const std::vector<std::vector<double>>& X) {
    for (const auto& row : X)
        if (row.size() != expected)
            throw LearnerError("predict: expected " + std::to_string(expected) + " features, got " +
                               std::to_string(row.size()));
}

double tree_leaf_proba(const TreeNode* node, const std::vector<double>& row) {
    while (!node->is_leaf()) {
        node = row[static_cast<std::size_t>(node->feature)] <= node->threshold ? node->left.get()
                                                                               : node->right.get();
    }
    const double total = node->class_counts[0] + node->class_counts[1];
    return total > 0.0 ? node->class_counts[1] / total : 0.5;
}

double sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double softplus(double z) {  // log(1 + e^z), stable
    return std::max(z, 0.0) + std::log1p(std::exp(-std::fabs(z)));
}

}  // namespace

std::vector<double> predict_proba(const TreeModel& m, const std::vector<std::vector<double>>& X) {
    check_width(m.n_features, X);
    std::vector<double> out;
    out.reserve(X.size());
    for (const auto& row : X) out.push_back(tree_leaf_proba(m.root.get(), row));
    return out;
}

std::vector<double> predict_proba(const ForestModel& m, const std::vector<std::vector<double>>& X) {
    check_width(m.n_features, X);
    std::vector<double> out(X.size(), 0.0);
    for (const auto& tree : m.trees) {
        for (std::size_t i = 0; i < X.size(); ++i)
            out[i] += tree_leaf_proba(tree.root.get(), X[i]);
    }
    for (double& v : out) v /= static_cast<double>(m.trees.size());
    return out;
}

std::vector<double> predict_proba(const LinearModel& m, const std::vector<std::vector<double>>& X) {
    check_width(m.weights.size(), X);
    std::vector<double> out;
    out.reserve(X.size());
    for (const auto& row : X) {
        double z = m.bias;
        for (std::size_t j = 0; j < row.size(); ++j) z += m.weights[j] * row[j];
        out.push_back(sigmoid(z));
    }
    return out;
}

std::vector<double> predict_proba(const GnbModel& m, const std::vector<std::vector<double>>& X) {
    check_width(m.means[0].size(), X);
    constexpr double kLog2Pi = 1.8378770664093453;
    std::vector<double> out;
    out.reserve(X.size());
    for (const auto& row : X) {
        double lp[2];
        for (int c = 0; c < 2; ++c) {
            double acc = std::log(m.priors[static_cast<std::size_t>(c)]);
            for (std::size_t j = 0; j < row.size(); ++j) {
                const double var = m.variances[static_cast<std::size_t>(c)][j];
                const double dx = row[j] - m.means[static_cast<std::size_t>(c)][j];
                acc += -0.5 * (kLog2Pi + std::log(var)) - dx * dx / (2.0 * var);
            }
            lp[c] = acc;
        }
        const double mx = std::max(lp[0], lp[1]);
        const double e0 = std::exp(lp[0] - mx), e1 = std::exp(lp[1] - mx);
        out.push_back(e1 / (e0 + e1));
    }
    return out;
}

std::vector<double> predict_proba(const MlpModel& m, const std::vector<std::vector<double>>& X) {
    check_width(m.in_dim, X);
    std::vector<double> out;
    out.reserve(X.size());
    const std::size_t h = static_cast<std::size_t>(m.hidden);
    for (const auto& row : X) {
        double z = m.b2;
        for (std::size_t k = 0; k < h; ++k) {
            double a = m.b1[k];
            for (std::size_t j = 0; j < m.in_dim; ++j) a += m.w1[k * m.in_dim + j] * row[j];
            z += m.w2[k] * std::tanh(a);
        }
        out.push_back(sigmoid(z));
    }
    return out;
}

std::vector<double> predict_proba(const Model& m, const std::vector<std::vector<double>>& X) {
    return std::visit([&X](const auto& model) { return predict_proba(model, X); }, m);
}

std::vector<int> labels_from_proba(const std::vector<double>& proba) {
    std::vector<int> out;
    out.reserve(proba.size());
    for (double p : proba) out.push_back(p >= 0.5 ? 1 : 0);
    return out;
}

// ---------------------------------------------------------------------------
// Logistic regression
// ---------------------------------------------------------------------------

std::pair<double, std::vector<double>> logistic_loss_grad(const std::vector<std::vector<double>>& X,
                                                          const std::vector<int>& y,
                                                          const std::vector<double>& w, double b,
                                                          double C) {
    const std::size_t n = X.size();
    const std::size_t d = w.size();
    double loss = 0.0;
    std::vector<double> grad(d + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double z = b;
        for (std::size_t j = 0; j < d; ++j) z += w[j] * X[i][j];
        const double s = y[i] == 1 ? 1.0 : -1.0;
        loss += softplus(-s * z);
        const double r = sigmoid(z) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < d; ++j) grad[j] += r * X[i][j];
        grad[d] += r;
    }
    for (std::size_t j = 0; j < d; ++j) {
        loss += w[j] * w[j] / (2.0 * C);
        grad[j] += w[j] / C;
    }
    return {loss, grad};
}

LinearModel train_logistic(const Dataset& data, const LogisticParams& params, std::uint64_t) {
    data.validate_for_training();
    if (params.C <= 0.0) throw LearnerError("train_logistic: C must be positive");
    const std::size_t d = data.d();
    std::vector<double> w(d, 0.0);
    double b = 0.0;

    auto [loss, grad] = logistic_loss_grad(data.X, data.y, w, b, params.C);
    for (int iter = 0; iter < params.max_iter; ++iter) {
        if (!std::isfinite(loss)) throw LearnerError("diverged");
        double gnorm2 = 0.0;
        for (double g : grad) gnorm2 += g * g;
        if (std::sqrt(gnorm2) < params.tol) break;

        // backtracking line search (Armijo)
        double step = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            std::vector<double> w_try(d);
            for (std::size_t j = 0; j < d; ++j) w_try[j] = w[j] - step * grad[j];
            const double b_try = b - step * grad[d];
            auto [loss_try, grad_try] = logistic_loss_grad(data.X, data.y, w_try, b_try, params.C);
            if (std::isfinite(loss_try) && loss_try <= loss - 1e-4 * step * gnorm2) {
                w = std::move(w_try);
                b = b_try;
                loss = loss_try;
                grad = std::move(grad_try);
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no further descent possible at double precision
    }
    return LinearModel{std::move(w), b, params.C};
}

// ---------------------------------------------------------------------------
// Gaussian naive Bayes
// ---------------------------------------------------------------------------

GnbModel train_gnb(const Dataset& data) {
    data.validate_for_training();
    const std::size_t d = data.d();
    GnbModel m;
    std::array<double, 2> counts{};
    for (int c = 0; c < 2; ++c) {
        m.means[static_cast<std::size_t>(c)].assign(d, 0.0);
        m.variances[static_cast<std::size_t>(c)].assign(d, 0.0);
    }
    for (std::size_t i = 0; i < data.n(); ++i) {
        const std::size_t c = data.y[i] == 1 ? 1 : 0;
        counts[c] += 1.0;
        for (std::size_t j = 0; j < d; ++j) m.means[c][j] += data.X[i][j];
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j) m.means[static_cast<std::size_t>(c)][j] /= counts[static_cast<std::size_t>(c)];
    for (std::size_t i = 0; i < data.n(); ++i) {
        const std::size_t c = data.y[i] == 1 ? 1 : 0;
        for (std::size_t j = 0; j < d; ++j) {
            const double dx = data.X[i][j] - m.means[c][j];
            m.variances[c][j] += dx * dx;
        }
    }
    for (int c = 0; c < 2; ++c)
        for (std::size_t j = 0; j < d; ++j) {
            auto& v = m.variances[static_cast<std::size_t>(c)][j];
            v = std::max(v / counts[static_cast<std::size_t>(c)], 1e-9);
        }
    m.priors = {counts[0] / static_cast<double>(data.n()), counts[1] / static_cast<double>(data.n())};
    return m;
}

// ---------------------------------------------------------------------------
// MLP
// ---------------------------------------------------------------------------

std::pair<double, std::vector<double>> mlp_loss_grad(const MlpModel& model,
                                                     const std::vector<std::vector<double>>& X,
                                                     const std::vector<int>& y, double l2) {
    const std::size_t n = X.size();
    const std::size_t d = model.in_dim;
    const std::size_t h = static_cast<std::size_t>(model.hidden);
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<double> gw1(h * d, 0.0), gb1(h, 0.0), gw2(h, 0.0);
    double gb2 = 0.0;
    double loss = 0.0;

    std::vector<double> act(h);
    for (std::size_t i = 0; i < n; ++i) {
        double z = model.b2;
        for (std::size_t k = 0; k < h; ++k) {
            double a = model.b1[k];
            for (std::size_t j = 0; j < d; ++j) a += model.w1[k * d + j] * X[i][j];
            act[k] = std::tanh(a);
            z += model.w2[k] * act[k];
        }
        loss += (softplus(z) - static_cast<double>(y[i]) * z) * inv_n;
        const double dz = (sigmoid(z) - static_cast<double>(y[i])) * inv_n;
        gb2 += dz;
        for (std::size_t k = 0; k < h; ++k) {
            gw2[k] += dz * act[k];
            const double dh = dz * model.w2[k] * (1.0 - act[k] * act[k]);
            gb1[k] += dh;
            for (std::size_t j = 0; j < d; ++j) gw1[k * d + j] += dh * X[i][j];
        }
    }
    for (std::size_t k = 0; k < h; ++k) {
        for (std::size_t j = 0; j < d; ++j) {
            loss += 0.5 * l2 * model.w1[k * d + j] * model.w1[k * d + j];
            gw1[k * d + j] += l2 * model.w1[k * d + j];
        }
        loss += 0.5 * l2 * model.w2[k] * model.w2[k];
        gw2[k] += l2 * model.w2[k];
    }

    std::vector<double> grad;
    grad.reserve(h * d + h + h + 1);
    grad.insert(grad.end(), gw1.begin(), gw1.end());
    grad.insert(grad.end(), gb1.begin(), gb1.end());
    grad.insert(grad.end(), gw2.begin(), gw2.end());
    grad.push_back(gb2);
    return {loss, grad};
}

MlpModel train_mlp(const Dataset& data, const MlpParams& params, std::uint64_t seed) {
    data.validate_for_training();
    if (params.hidden_width < 1) throw LearnerError("train_mlp: hidden_width must be >= 1");
    const std::size_t d = data.d();
    const std::size_t h = static_cast<std::size_t>(params.hidden_width);

    MlpModel m;
    m.in_dim = d;
    m.hidden = params.hidden_width;
    m.w1.resize(h * d);
    m.b1.assign(h, 0.0);
    m.w2.resize(h);

    Rng rng = Rng::derive(seed, {0x6d6c70ULL});
    const double s1 = 1.0 / std::sqrt(static_cast<double>(d));
    const double s2 = 1.0 / std::sqrt(static_cast<double>(h));
    for (auto& w : m.w1) w = rng.normal() * s1;
    for (auto& w : m.w2) w = rng.normal() * s2;

    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        auto [loss, grad] = mlp_loss_grad(m, data.X, data.y, params.l2);
        if (!std::isfinite(loss)) throw LearnerError("diverged");
        std::size_t g = 0;
        for (std::size_t k = 0; k < h * d; ++k) m.w1[k] -= params.learning_rate * grad[g++];
        for (std::size_t k = 0; k < h; ++k) m.b1[k] -= params.learning_rate * grad[g++];
        for (std::size_t k = 0; k < h; ++k) m.w2[k] -= params.learning_rate * grad[g++];
        m.b2 -= params.learning_rate * grad[g++];
    }
    auto [final_loss, final_grad] = mlp_loss_grad(m, data.X, data.y, params.l2);
    (void)final_grad;
    if (!std::isfinite(final_loss)) throw LearnerError("diverged");
    return m;
}

// ---------------------------------------------------------------------------
// Uniform interface
// ---------------------------------------------------------------------------

const char* learner_name(LearnerKind k) {
    switch (k) {
        case LearnerKind::DecisionTree: return "dt";
        case LearnerKind::RandomForest: return "rf";
        case LearnerKind::Logistic: return "lr";
        case LearnerKind::GaussianNb: return "nb";
        case LearnerKind::Mlp: return "mlp";
    }
    return "dt";
}

LearnerKind parse_learner(const std::string& name) {
    if (name == "dt") return LearnerKind::DecisionTree;
    if (name == "rf") return LearnerKind::RandomForest;
    if (name == "lr") return LearnerKind::Logistic;
    if (name == "nb") return LearnerKind::GaussianNb;
    if (name == "mlp") return LearnerKind::Mlp;
    throw LearnerError("unknown classifier: " + name + " (expected dt, rf, lr, nb, mlp)");
}

namespace {

double hp(const HyperParams& p, const std::string& key, double fallback) {
    const auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

}  // namespace

Model train_model(LearnerKind kind, const Dataset& data, const HyperParams& params,
                  std::uint64_t seed) {
    switch (kind) {
        case LearnerKind::DecisionTree: {
            TreeParams tp;
            tp.max_depth = static_cast<int>(hp(params, "max_depth", -1));
            tp.min_samples_leaf = static_cast<int>(hp(params, "min_samples_leaf", 1));
            tp.impurity = hp(params, "entropy", 0) != 0 ? Impurity::Entropy : Impurity::Gini;
            return train_tree(data, tp, seed);
        }
        case LearnerKind::RandomForest: {
            ForestParams fp;
            fp.n_trees = static_cast<int>(hp(params, "n_trees", 100));
            fp.tree.max_depth = static_cast<int>(hp(params, "max_depth", -1));
            fp.tree.min_samples_leaf = static_cast<int>(hp(params, "min_samples_leaf", 1));
            fp.tree.impurity = hp(params, "entropy", 0) != 0 ? Impurity::Entropy : Impurity::Gini;
            fp.global_n_weighting = hp(params, "global_n_weighting", 0) != 0;
            return train_forest(data, fp, seed);
        }
        case LearnerKind::Logistic: {
            LogisticParams lp;
            lp.C = hp(params, "C", 1.0);
            lp.max_iter = static_cast<int>(hp(params, "max_iter", 500));
            lp.tol = hp(params, "tol", 1e-6);
            return train_logistic(data, lp, seed);
        }
        case LearnerKind::GaussianNb:
            return train_gnb(data);
        case LearnerKind::Mlp: {
            MlpParams mp;
            mp.hidden_width = static_cast<int>(hp(params, "hidden_width", 8));
            mp.learning_rate = hp(params, "learning_rate", 0.1);
            mp.epochs = static_cast<int>(hp(params, "epochs", 2000));
            mp.l2 = hp(params, "l2", 1e-4);
            return train_mlp(data, mp, seed);
        }
    }
    throw LearnerError("unknown learner kind");
}

}  // namespace lincue
