#include <json.hpp>

#include "lincue/learners.hpp"

namespace lincue {

namespace {

using nlohmann::ordered_json;

ordered_json node_to_json(const TreeNode* node) {
    ordered_json j;
    j["n"] = node->n_samples;
    j["impurity"] = node->node_impurity;
    j["counts"] = {node->class_counts[0], node->class_counts[1]};
    if (!node->is_leaf()) {
        j["feature"] = node->feature;
        j["threshold"] = node->threshold;
        j["left"] = node_to_json(node->left.get());
        j["right"] = node_to_json(node->right.get());
    }
    return j;
}

std::unique_ptr<TreeNode> node_from_json(const ordered_json& j) {
    auto node = std::make_unique<TreeNode>();
    node->n_samples = j.at("n").get<std::size_t>();
    node->node_impurity = j.at("impurity").get<double>();
    node->class_counts = {j.at("counts")[0].get<double>(), j.at("counts")[1].get<double>()};
    if (j.contains("feature")) {
        node->feature = j.at("feature").get<int>();
        node->threshold = j.at("threshold").get<double>();
        node->left = node_from_json(j.at("left"));
        node->right = node_from_json(j.at("right"));
    }
    return node;
}

ordered_json tree_to_json(const TreeModel& m) {
    ordered_json j;
    j["n_features"] = m.n_features;
    j["n_training_samples"] = m.n_training_samples;
    j["impurity"] = m.impurity == Impurity::Entropy ? "entropy" : "gini";
    j["root"] = node_to_json(m.root.get());
    return j;
}

TreeModel tree_from_json(const ordered_json& j) {
    TreeModel m;
    m.n_features = j.at("n_features").get<std::size_t>();
    m.n_training_samples = j.at("n_training_samples").get<std::size_t>();
    m.impurity = j.at("impurity").get<std::string>() == "entropy" ? Impurity::Entropy : Impurity::Gini;
    m.root = node_from_json(j.at("root"));
    return m;
}

}  // namespace

std::string model_to_json(const Model& m) {
    ordered_json j;
    j["format"] = "lincue-model";
    j["version"] = 1;
    std::visit(
        [&j](const auto& model) {
            using T = std::decay_t<decltype(model)>;
            if constexpr (std::is_same_v<T, TreeModel>) {
                j["kind"] = "dt";
                j["model"] = tree_to_json(model);
            } else if constexpr (std::is_same_v<T, ForestModel>) {
                j["kind"] = "rf";
                ordered_json f;
                f["n_features"] = model.n_features;
                f["tree_seeds"] = model.tree_seeds;
                f["importances"] = model.importances;
                f["trees"] = ordered_json::array();
                for (const auto& t : model.trees) f["trees"].push_back(tree_to_json(t));
                j["model"] = std::move(f);
            } else if constexpr (std::is_same_v<T, LinearModel>) {
                j["kind"] = "lr";
                j["model"] = {{"weights", model.weights}, {"bias", model.bias}, {"C", model.C}};
            } else if constexpr (std::is_same_v<T, GnbModel>) {
                j["kind"] = "nb";
                j["model"] = {{"priors", model.priors},
                              {"means", model.means},
                              {"variances", model.variances}};
            } else {
                j["kind"] = "mlp";
                j["model"] = {{"in_dim", model.in_dim}, {"hidden", model.hidden},
                              {"w1", model.w1},         {"b1", model.b1},
                              {"w2", model.w2},         {"b2", model.b2}};
            }
        },
        m);
    return j.dump(2) + "\n";
}

Model model_from_json(const std::string& json_text) {
    const ordered_json j = ordered_json::parse(json_text);
    if (j.at("format").get<std::string>() != "lincue-model")
        throw LearnerError("model JSON: unknown format");
    if (j.at("version").get<int>() != 1) throw LearnerError("model JSON: unsupported version");
    const std::string kind = j.at("kind").get<std::string>();
    const ordered_json& body = j.at("model");
    if (kind == "dt") return tree_from_json(body);
    if (kind == "rf") {
        ForestModel m;
        m.n_features = body.at("n_features").get<std::size_t>();
        m.tree_seeds = body.at("tree_seeds").get<std::vector<std::uint64_t>>();
        m.importances = body.at("importances").get<std::vector<double>>();
        for (const auto& t : body.at("trees")) m.trees.push_back(tree_from_json(t));
        return m;
    }
    if (kind == "lr") {
        LinearModel m;
        m.weights = body.at("weights").get<std::vector<double>>();
        m.bias = body.at("bias").get<double>();
        m.C = body.at("C").get<double>();
        return m;
    }
    if (kind == "nb") {
        GnbModel m;
        const auto priors = body.at("priors").get<std::vector<double>>();
        m.priors = {priors.at(0), priors.at(1)};
        const auto means = body.at("means").get<std::vector<std::vector<double>>>();
        const auto vars = body.at("variances").get<std::vector<std::vector<double>>>();
        m.means = {means.at(0), means.at(1)};
        m.variances = {vars.at(0), vars.at(1)};
        return m;
    }
    if (kind == "mlp") {
        MlpModel m;
        m.in_dim = body.at("in_dim").get<std::size_t>();
        m.hidden = body.at("hidden").get<int>();
        m.w1 = body.at("w1").get<std::vector<double>>();
        m.b1 = body.at("b1").get<std::vector<double>>();
        m.w2 = body.at("w2").get<std::vector<double>>();
        m.b2 = body.at("b2").get<double>();
        return m;
    }
    throw LearnerError("model JSON: unknown kind '" + kind + "'");
}

}  // namespace lincue
