#include "lincue/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>

#include "lincue/artifacts.hpp"
#include "lincue/corpus.hpp"
#include "lincue/csv.hpp"
#include "lincue/evaluation.hpp"
#include "lincue/features.hpp"
#include "lincue/io_util.hpp"
#include "lincue/lexicon.hpp"
#include "lincue/lingpipe.hpp"
#include "lincue/log.hpp"
#include "lincue/selection.hpp"

#ifndef LINCUE_DATA_DIR
#define LINCUE_DATA_DIR "data"
#endif

namespace lincue::cli {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

std::string lexicon_dir_or_default(const RunConfig& config) {
    if (!config.lexicon_dir.empty()) return config.lexicon_dir;
    return join_path(LINCUE_DATA_DIR, "lexicons");
}

std::vector<std::string> split_csv_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Analyzer make_analyzer(const RunConfig& config) {
    const Lexicons lexicons = load_lexicons(lexicon_dir_or_default(config));
    const Dictionary dictionary = load_dictionary(config.dictionary, config.allowlist);
    return Analyzer(lexicons, dictionary);
}

FeatureMatrix load_features_or_throw(const RunConfig& config) {
    const std::string path = join_path(config.outdir, "features.csv");
    if (!file_exists(path)) throw MissingArtifactError("missing prerequisite artifact: " + path);
    return load_feature_matrix(path);
}

// Rebuilds the nested RFE sets, reusing selection_report.json when present
// so evaluate agrees with an earlier select run.
std::vector<std::vector<std::size_t>> nested_subsets_for(const FeatureMatrix& matrix,
                                                         const RunConfig& config) {
    const std::string selection_path = join_path(config.outdir, "selection_report.json");
    std::vector<int> first_appearance(kFeatureCount, 0);
    bool have = false;
    if (file_exists(selection_path)) {
        const auto j = nlohmann::json::parse(read_file(selection_path));
        std::size_t found = 0;
        for (const auto& row : j.at("features")) {
            const std::string name = row.at("feature").get<std::string>();
            const auto it = std::find(feature_names().begin(), feature_names().end(), name);
            if (it == feature_names().end()) continue;
            first_appearance[static_cast<std::size_t>(it - feature_names().begin())] =
                row.at("appears_on_iteration").get<int>();
            ++found;
        }
        have = found == kFeatureCount;
    }
    if (!have) {
        const RfeTrace trace = rfe(dataset_from_matrix(matrix), 1, config.seed);
        first_appearance = trace.first_appearance();
    }
    std::vector<std::size_t> order(kFeatureCount);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return first_appearance[a] < first_appearance[b];
    });
    std::vector<std::vector<std::size_t>> subsets;
    std::vector<std::size_t> cur;
    for (std::size_t f : order) {
        cur.insert(std::lower_bound(cur.begin(), cur.end(), f), f);
        subsets.push_back(cur);
    }
    return subsets;
}

int run_guarded(const char* name, const std::function<int()>& body) {
    try {
        return body();
    } catch (const MissingArtifactError& e) {
        std::cerr << name << ": " << e.what() << "\n";
        return kExitMissingPrereq;
    } catch (const std::exception& e) {
        std::cerr << name << ": error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace

int cmd_convert(const RunConfig& config) {
    if (config.input.empty()) {
        std::cerr << "convert: --input is required\n";
        return kExitUsage;
    }
    if (config.output.empty()) {
        std::cerr << "convert: --output is required\n";
        return kExitUsage;
    }
    return run_guarded("convert", [&] {
        const auto records = csv::parse_file(config.input);
        if (records.empty()) throw CorpusError("convert: input has no header row");
        const auto& header = records.front().fields;
        auto column_of = [&](const std::string& name) -> int {
            if (name.empty()) return -1;
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) throw CorpusError("convert: no column named '" + name + "'");
            return static_cast<int>(it - header.begin());
        };
        const int text_col = column_of(config.text_col);
        const int label_col = column_of(config.label_col);
        const int id_col = column_of(config.id_col);
        const int sentiment_col = column_of(config.sentiment_col);
        const int source_col = column_of(config.source_col);

        std::vector<std::string> fake_tokens, real_tokens;
        for (auto& t : split_csv_list(config.fake_values)) fake_tokens.push_back(to_lower(t));
        for (auto& t : split_csv_list(config.real_values)) real_tokens.push_back(to_lower(t));

        Corpus corpus;
        for (std::size_t r = 1; r < records.size(); ++r) {
            const auto& fields = records[r].fields;
            auto field = [&](int col) -> std::string {
                return col >= 0 && static_cast<std::size_t>(col) < fields.size()
                           ? fields[static_cast<std::size_t>(col)]
                           : "";
            };
            Review review;
            review.text = field(text_col);
            const std::string label = to_lower(field(label_col));
            if (std::find(fake_tokens.begin(), fake_tokens.end(), label) != fake_tokens.end()) {
                review.label = Label::Fake;
            } else if (std::find(real_tokens.begin(), real_tokens.end(), label) != real_tokens.end()) {
                review.label = Label::Real;
            } else {
                throw CorpusError("convert: line " + std::to_string(records[r].line) +
                                  ": unmapped label token '" + field(label_col) + "'");
            }
            if (id_col >= 0) {
                review.id = field(id_col);
            } else {
                char buf[16];
                std::snprintf(buf, sizeof(buf), "r%03zu", r);
                review.id = buf;
            }
            const std::string sentiment = to_lower(field(sentiment_col));
            if (sentiment == "positive" || sentiment == "pos") review.sentiment = Sentiment::Positive;
            else if (sentiment == "negative" || sentiment == "neg") review.sentiment = Sentiment::Negative;
            review.source = field(source_col);
            corpus.reviews.push_back(std::move(review));
        }
        save_corpus(corpus, config.output);
        std::cout << "convert: wrote " << corpus.size() << " reviews to " << config.output << "\n";
        return kExitOk;
    });
}

int cmd_extract(const RunConfig& config) {
    if (config.input.empty()) {
        std::cerr << "extract: --input is required\n";
        return kExitUsage;
    }
    if (config.dictionary.empty()) {
        std::cerr << "extract: --dictionary is required (path to the wordlist)\n";
        return kExitUsage;
    }
    return run_guarded("extract", [&] {
        ensure_directory(config.outdir);
        const Corpus corpus = load_corpus(config.input);
        const Analyzer analyzer = make_analyzer(config);
        const FeatureMatrix matrix = extract_matrix(corpus, analyzer);
        save_feature_matrix(matrix, join_path(config.outdir, "features.csv"));
        if (matrix.size() == 0) {
            log_warning("extract: corpus is empty; wrote header-only features.csv");
            return kExitOk;
        }

        // per-feature summary on stdout
        std::printf("%-22s %12s %12s %12s %12s\n", "feature", "mean(fake)", "sd(fake)",
                    "mean(real)", "sd(real)");
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            auto stats_of = [&](Label label) {
                const auto col = matrix.column_for_label(f, label);
                double mean = 0.0;
                for (double v : col) mean += v;
                mean /= col.empty() ? 1.0 : static_cast<double>(col.size());
                double var = 0.0;
                for (double v : col) var += (v - mean) * (v - mean);
                if (col.size() > 1) var /= static_cast<double>(col.size() - 1);
                return std::pair<double, double>(mean, std::sqrt(var));
            };
            const auto [mf, sf] = stats_of(Label::Fake);
            const auto [mr, sr] = stats_of(Label::Real);
            std::printf("%-22s %12.4f %12.4f %12.4f %12.4f\n", feature_names()[f].c_str(), mf, sf,
                        mr, sr);
        }
        std::cout << "extract: wrote " << matrix.size() << " rows to "
                  << join_path(config.outdir, "features.csv") << "\n";
        return kExitOk;
    });
}

int cmd_stats(const RunConfig& config) {
    return run_guarded("stats", [&] {
        ensure_directory(config.outdir);
        const FeatureMatrix matrix = load_features_or_throw(config);
        const auto rows = compute_stats_rows(matrix);
        write_stats_artifacts(matrix, rows, config.outdir);
        std::vector<StatsRow> sorted = rows;
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const StatsRow& a, const StatsRow& b) { return a.ovl < b.ovl; });
        std::printf("%-22s %10s %-9s %10s %10s\n", "feature", "ovl", "scale", "kw_h", "kw_p");
        for (const auto& r : sorted) {
            std::printf("%-22s %10.6f %-9s %10.4f %10.6f\n", r.feature.c_str(), r.ovl,
                        ovl_scale_name(r.scale), r.kw_h, r.kw_p);
        }
        return kExitOk;
    });
}

int cmd_select(const RunConfig& config) {
    return run_guarded("select", [&] {
        ensure_directory(config.outdir);
        const FeatureMatrix matrix = load_features_or_throw(config);
        SelectionParams params;
        params.boruta.n_iterations = config.boruta_iterations;
        const SelectionReport report =
            build_selection_report(dataset_from_matrix(matrix), params, config.seed);
        write_selection_artifacts(report, config.outdir);
        std::cout << "select: spearman(importance, ovl) = " << report.spearman_importance_ovl
                  << " (excluding sparse cues: " << report.spearman_importance_ovl_excl << ")\n";
        return kExitOk;
    });
}

int cmd_evaluate(const RunConfig& config) {
    std::vector<LearnerKind> kinds;
    try {
        for (const auto& name : split_csv_list(config.classifiers))
            kinds.push_back(parse_learner(name));
        if (kinds.empty()) throw LearnerError("no classifiers given");
    } catch (const LearnerError& e) {
        std::cerr << "evaluate: " << e.what() << "\n";
        return kExitUsage;
    }
    return run_guarded("evaluate", [&] {
        ensure_directory(config.outdir);
        const FeatureMatrix matrix = load_features_or_throw(config);
        const GridConfig grids = config.grid_config.empty() ? default_grid_config()
                                                            : load_grid_config(config.grid_config);
        const auto subsets = nested_subsets_for(matrix, config);
        const EvalGrid grid =
            run_experiment(matrix, subsets, kinds, config.kfolds, config.seed, grids);
        write_eval_artifacts(grid, config.outdir);
        for (const auto& s : grid.summaries) {
            std::printf("evaluate: %-4s max accuracy %.4f with %d features (max F1 %.4f with %d)\n",
                        s.classifier.c_str(), s.max_accuracy, s.features_at_max_accuracy, s.max_f1,
                        s.features_at_max_f1);
        }
        return kExitOk;
    });
}

int cmd_report(const RunConfig& config) {
    return run_guarded("report", [&] {
        write_summary_report(config.outdir);
        std::cout << "report: wrote " << join_path(config.outdir, "report.md") << "\n";
        return kExitOk;
    });
}

int cmd_run_all(const RunConfig& config) {
    const int extract_rc = cmd_extract(config);
    if (extract_rc != kExitOk) return extract_rc;
    if (const int rc = cmd_stats(config); rc != kExitOk) return rc;
    if (const int rc = cmd_select(config); rc != kExitOk) return rc;
    if (const int rc = cmd_evaluate(config); rc != kExitOk) return rc;
    return cmd_report(config);
}

}  // namespace lincue::cli
