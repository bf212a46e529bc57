#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lincue/corpus.hpp"
#include "lincue/evaluation.hpp"
#include "lincue/features.hpp"
#include "lincue/lexicon.hpp"
#include "lincue/lingpipe.hpp"
#include "lincue/selection.hpp"
#include "lincue/stats.hpp"

namespace py = pybind11;
using namespace lincue;

namespace {

Dataset make_dataset(const std::vector<std::vector<double>>& X, const std::vector<int>& y,
                     std::vector<std::string> names) {
    Dataset d;
    d.X = X;
    d.y = y;
    if (names.empty())
        for (std::size_t f = 0; f < (X.empty() ? 0 : X.front().size()); ++f)
            names.push_back("f" + std::to_string(f));
    d.feature_names = std::move(names);
    return d;
}

}  // namespace

PYBIND11_MODULE(lincue, m) {
    m.doc() = "Linguistic-cue extraction, feature selection and classification toolkit";

    // --- linguistic analysis ---
    py::enum_<Pos>(m, "Pos")
        .value("NOUN", Pos::NOUN).value("VERB", Pos::VERB).value("AUX", Pos::AUX)
        .value("ADJ", Pos::ADJ).value("ADV", Pos::ADV).value("PRON", Pos::PRON)
        .value("DET", Pos::DET).value("ADP", Pos::ADP).value("CONJ", Pos::CONJ)
        .value("NUM", Pos::NUM).value("PART", Pos::PART).value("PUNCT", Pos::PUNCT)
        .value("MODAL", Pos::MODAL).value("OTHER", Pos::OTHER);

    py::class_<Token>(m, "Token")
        .def_readonly("surface", &Token::surface)
        .def_readonly("lower", &Token::lower)
        .def_readonly("pos", &Token::pos)
        .def_readonly("is_function_word", &Token::is_function_word)
        .def_readonly("char_len", &Token::char_len);

    py::class_<Span>(m, "Span")
        .def_readonly("begin", &Span::begin)
        .def_readonly("end", &Span::end);

    py::class_<Sentence>(m, "Sentence")
        .def_readonly("tokens", &Sentence::tokens)
        .def_readonly("np_chunks", &Sentence::np_chunks)
        .def_readonly("clause_count", &Sentence::clause_count)
        .def_readonly("passive_count", &Sentence::passive_count);

    py::class_<AnalyzedDoc>(m, "AnalyzedDoc")
        .def_readonly("sentences", &AnalyzedDoc::sentences)
        .def_readonly("word_count", &AnalyzedDoc::word_count)
        .def_readonly("punctuation_count", &AnalyzedDoc::punctuation_count)
        .def_readonly("typo_count", &AnalyzedDoc::typo_count);

    py::class_<Analyzer>(m, "Analyzer")
        .def(py::init([](const std::string& lexicon_dir, const std::string& dictionary,
                         const std::string& allowlist) {
                 return Analyzer(load_lexicons(lexicon_dir),
                                 load_dictionary(dictionary, allowlist));
             }),
             py::arg("lexicon_dir"), py::arg("dictionary"), py::arg("allowlist") = "")
        .def("analyze", &Analyzer::analyze, py::arg("text"))
        .def("tag_pos",
             [](const Analyzer& a, const std::vector<std::string>& tokens) {
                 std::vector<std::string> out;
                 for (Pos p : a.tag_pos(tokens)) out.push_back(pos_name(p));
                 return out;
             },
             py::arg("tokens"));

    m.def("feature_names", [] {
        return std::vector<std::string>(feature_names().begin(), feature_names().end());
    });
    m.def("extract_features",
          [](const AnalyzedDoc& doc) {
              const FeatureVector v = extract(doc);
              return std::vector<double>(v.values.begin(), v.values.end());
          },
          py::arg("doc"), "The 15 cue values in feature_names() order");

    // --- corpus ---
    py::enum_<Label>(m, "Label").value("Fake", Label::Fake).value("Real", Label::Real);
    py::class_<Review>(m, "Review")
        .def_readonly("id", &Review::id)
        .def_readonly("text", &Review::text)
        .def_readonly("label", &Review::label)
        .def_readonly("source", &Review::source);
    py::class_<Corpus>(m, "Corpus")
        .def_readonly("reviews", &Corpus::reviews)
        .def("__len__", &Corpus::size);
    m.def("load_corpus", &load_corpus, py::arg("path"));
    m.def("class_balance", [](const Corpus& c) {
        std::map<std::string, std::size_t> out;
        for (const auto& [label, count] : class_balance(c)) out[label_name(label)] = count;
        return out;
    });

    // --- statistics ---
    py::class_<DensityEstimate>(m, "DensityEstimate")
        .def_readonly("bandwidth", &DensityEstimate::bandwidth)
        .def("evaluate", &DensityEstimate::evaluate, py::arg("x"))
        .def("grid_lo", &DensityEstimate::grid_lo)
        .def("grid_hi", &DensityEstimate::grid_hi);
    m.def("kde_fit", &kde_fit, py::arg("sample"));
    m.def("ovl",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return ovl(kde_fit(a), kde_fit(b)).value;
          },
          py::arg("sample_a"), py::arg("sample_b"),
          "Overlapping coefficient of the two samples' KDEs");
    m.def("kruskal_wallis",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              const TestResult r = kruskal_wallis(a, b);
              return std::make_pair(r.statistic, r.p_value);
          },
          py::arg("group_a"), py::arg("group_b"), "Returns (H, p)");
    m.def("spearman",
          [](const std::vector<double>& x, const std::vector<double>& y) {
              const TestResult r = spearman(x, y);
              return std::make_pair(r.statistic, r.p_value);
          },
          py::arg("x"), py::arg("y"), "Returns (rho, p)");
    m.def("binom_sf", &binom_sf, py::arg("k"), py::arg("n"), py::arg("p"));

    // --- learning / selection ---
    m.def("forest_importances",
          [](const std::vector<std::vector<double>>& X, const std::vector<int>& y, int n_trees,
             int max_depth, std::uint64_t seed) {
              ForestParams params;
              params.n_trees = n_trees;
              params.tree.max_depth = max_depth;
              return train_forest(make_dataset(X, y, {}), params, seed).importances;
          },
          py::arg("X"), py::arg("y"), py::arg("n_trees") = 100, py::arg("max_depth") = -1,
          py::arg("seed") = 42);
    m.def("rfe_first_appearance",
          [](const std::vector<std::vector<double>>& X, const std::vector<int>& y,
             std::uint64_t seed) { return rfe(make_dataset(X, y, {}), 1, seed).first_appearance(); },
          py::arg("X"), py::arg("y"), py::arg("seed") = 42,
          "Subset size at which each feature first appears (1 = kept longest)");
    m.def("boruta_hits",
          [](const std::vector<std::vector<double>>& X, const std::vector<int>& y,
             int n_iterations, std::uint64_t seed) {
              BorutaParams params;
              params.n_iterations = n_iterations;
              std::vector<std::pair<int, std::string>> out;
              for (const auto& v : boruta(make_dataset(X, y, {}), params, seed))
                  out.emplace_back(v.hits, boruta_zone_name(v.zone));
              return out;
          },
          py::arg("X"), py::arg("y"), py::arg("n_iterations") = 100, py::arg("seed") = 42,
          "Per feature, (hits, zone)");
    m.def("stratified_kfold",
          [](const std::vector<int>& labels, int k, std::uint64_t seed) {
              std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
              for (const auto& f : stratified_kfold(labels, k, seed)) out.emplace_back(f.train, f.test);
              return out;
          },
          py::arg("labels"), py::arg("k"), py::arg("seed") = 42);
    m.def("compute_metrics",
          [](const std::vector<int>& y_true, const std::vector<int>& y_pred) {
              const Metrics r = compute_metrics(y_true, y_pred);
              std::map<std::string, double> out{{"accuracy", r.accuracy},
                                                {"precision", r.precision},
                                                {"recall", r.recall},
                                                {"f1", r.f1}};
              return out;
          },
          py::arg("y_true"), py::arg("y_pred"));

    m.attr("__version__") = "0.1.0";
}
