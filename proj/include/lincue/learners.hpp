#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lincue {

struct LearnerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Training data: N rows, D features, binary labels (1 = positive class).
struct Dataset {
    std::vector<std::vector<double>> X;
    std::vector<int> y;
    std::vector<std::string> feature_names;

    std::size_t n() const { return X.size(); }
    std::size_t d() const { return X.empty() ? feature_names.size() : X.front().size(); }
    Dataset subset_rows(const std::vector<std::size_t>& indices) const;
    Dataset subset_features(const std::vector<std::size_t>& features) const;
    void validate_for_training() const;  // finite values, N >= 2, both classes present
};

// Per-feature standardization fitted on training data only.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stdev;  // zero-variance columns get stdev 1

    static Standardizer fit(const std::vector<std::vector<double>>& X);
    std::vector<std::vector<double>> transform(const std::vector<std::vector<double>>& X) const;
};

// ---------------------------------------------------------------------------
// Decision tree / random forest
// ---------------------------------------------------------------------------

enum class Impurity { Gini, Entropy };

// Gini or base-2 entropy of a two-class count pair.
double impurity_value(Impurity imp, double count0, double count1);

// Impurity decrease of a candidate split. `n_ref` is the denominator of the
// child fractions: the node size for the per-node convention, the full
// training-set size for the global-N one.
double impurity_decrease(Impurity imp, double left0, double left1, double right0, double right1,
                         double n_ref);

struct TreeParams {
    int max_depth = -1;  // <= 0 means unbounded
    int min_samples_leaf = 1;
    Impurity impurity = Impurity::Gini;
    bool feature_subsample = false;  // sqrt(D) random features per split
};

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::size_t n_samples = 0;
    double node_impurity = 0.0;
    std::array<double, 2> class_counts{};
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    bool is_leaf() const { return feature < 0; }
};

struct TreeModel {
    std::unique_ptr<TreeNode> root;
    std::size_t n_features = 0;
    std::size_t n_training_samples = 0;
    Impurity impurity = Impurity::Gini;
};

TreeModel train_tree(const Dataset& data, const TreeParams& params, std::uint64_t seed);

// Per-feature importance of one tree: sum over internal nodes splitting on f
// of p(t) * delta_i, p(t) = N_t / N. With `global_n` the child fractions in
// delta_i use N instead of N_t.
std::vector<double> tree_importances(const TreeModel& tree, bool global_n = false);

struct ForestParams {
    int n_trees = 100;
    TreeParams tree;
    bool global_n_weighting = false;
};

struct ForestModel {
    std::vector<TreeModel> trees;
    std::vector<std::uint64_t> tree_seeds;
    std::vector<double> importances;  // normalized to sum 1 when any split occurred
    std::size_t n_features = 0;
};

ForestModel train_forest(const Dataset& data, const ForestParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Logistic regression
// ---------------------------------------------------------------------------

struct LogisticParams {
    double C = 1.0;
    int max_iter = 500;
    double tol = 1e-6;
};

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    double C = 1.0;
};

// L2-regularized negative log-likelihood (penalty 1/(2C) * ||w||^2), gradient
// descent with backtracking line search. Expects standardized features.
LinearModel train_logistic(const Dataset& data, const LogisticParams& params, std::uint64_t seed);

// Loss and flat gradient [dw..., db] at the given parameters (for oracle checks).
std::pair<double, std::vector<double>> logistic_loss_grad(const std::vector<std::vector<double>>& X,
                                                          const std::vector<int>& y,
                                                          const std::vector<double>& w, double b,
                                                          double C);

// ---------------------------------------------------------------------------
// Gaussian naive Bayes
// ---------------------------------------------------------------------------

struct GnbModel {
    std::array<double, 2> priors{};
    std::array<std::vector<double>, 2> means;
    std::array<std::vector<double>, 2> variances;  // floored at 1e-9
};

GnbModel train_gnb(const Dataset& data);

// ---------------------------------------------------------------------------
// Single-hidden-layer MLP (tanh, logistic output, full-batch GD)
// ---------------------------------------------------------------------------

struct MlpParams {
    int hidden_width = 8;
    double learning_rate = 0.1;
    int epochs = 2000;
    double l2 = 1e-4;
};

struct MlpModel {
    std::size_t in_dim = 0;
    int hidden = 0;
    std::vector<double> w1;  // hidden x in, row-major
    std::vector<double> b1;
    std::vector<double> w2;
    double b2 = 0.0;
};

MlpModel train_mlp(const Dataset& data, const MlpParams& params, std::uint64_t seed);

// Mean cross-entropy + L2 penalty, with the full flat gradient
// [w1..., b1..., w2..., b2] (for finite-difference checks).
std::pair<double, std::vector<double>> mlp_loss_grad(const MlpModel& model,
                                                     const std::vector<std::vector<double>>& X,
                                                     const std::vector<int>& y, double l2);

// ---------------------------------------------------------------------------
// Uniform train/predict interface
// ---------------------------------------------------------------------------

enum class LearnerKind { DecisionTree, RandomForest, Logistic, GaussianNb, Mlp };

const char* learner_name(LearnerKind k);               // "dt", "rf", "lr", "nb", "mlp"
LearnerKind parse_learner(const std::string& name);

// Hyperparameters as an ordered name->value map; trainers fill defaults.
// Depth "none" is encoded as -1.
using HyperParams = std::map<std::string, double>;

using Model = std::variant<TreeModel, ForestModel, LinearModel, GnbModel, MlpModel>;

Model train_model(LearnerKind kind, const Dataset& data, const HyperParams& params,
                  std::uint64_t seed);

// P(class 1) per row; throws LearnerError on feature-count mismatch.
std::vector<double> predict_proba(const TreeModel& m, const std::vector<std::vector<double>>& X);
std::vector<double> predict_proba(const ForestModel& m, const std::vector<std::vector<double>>& X);
std::vector<double> predict_proba(const LinearModel& m, const std::vector<std::vector<double>>& X);
std::vector<double> predict_proba(const GnbModel& m, const std::vector<std::vector<double>>& X);
std::vector<double> predict_proba(const MlpModel& m, const std::vector<std::vector<double>>& X);
std::vector<double> predict_proba(const Model& m, const std::vector<std::vector<double>>& X);

std::vector<int> labels_from_proba(const std::vector<double>& proba);  // p >= 0.5 -> 1

// Versioned JSON round-trip for reproducible re-evaluation.
std::string model_to_json(const Model& m);
Model model_from_json(const std::string& json_text);

}  // namespace lincue
