#include <CLI11.hpp>

#include "lincue/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"lincue — linguistic-cue analysis and fake-review classification"};
    app.require_subcommand(1);

    lincue::RunConfig config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--outdir", config.outdir, "Artifact directory (created if absent)");
        cmd->add_option("--seed", config.seed, "Master RNG seed (default 42)");
    };
    auto add_lexical = [&](CLI::App* cmd) {
        cmd->add_option("--dictionary", config.dictionary, "Wordlist file for typo detection");
        cmd->add_option("--allowlist", config.allowlist, "Corpus allowlist (proper nouns)");
        cmd->add_option("--lexicon-dir", config.lexicon_dir,
                        "Directory with pos_lexicon/function_words/participles/abbreviations");
    };

    CLI::App* convert = app.add_subcommand("convert", "Convert a raw review CSV to canonical form");
    convert->add_option("--input", config.input, "Raw CSV file");
    convert->add_option("--output", config.output, "Canonical CSV to write");
    convert->add_option("--text-col", config.text_col, "Column holding the review text");
    convert->add_option("--label-col", config.label_col, "Column holding the class label");
    convert->add_option("--id-col", config.id_col, "Optional id column");
    convert->add_option("--sentiment-col", config.sentiment_col, "Optional sentiment column");
    convert->add_option("--source-col", config.source_col, "Optional source column");
    convert->add_option("--fake-values", config.fake_values, "Label tokens mapped to fake");
    convert->add_option("--real-values", config.real_values, "Label tokens mapped to real");

    CLI::App* extract = app.add_subcommand("extract", "Compute the 15 cue values per review");
    extract->add_option("--input", config.input, "Canonical corpus CSV");
    add_common(extract);
    add_lexical(extract);

    CLI::App* stats = app.add_subcommand("stats", "Per-feature OVL / Kruskal-Wallis report");
    add_common(stats);

    CLI::App* select = app.add_subcommand("select", "RF importance, RFE, Boruta selection report");
    add_common(select);
    select->add_option("--boruta-iterations", config.boruta_iterations, "Boruta iterations");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Cross-validated grid over feature subsets");
    add_common(evaluate);
    evaluate->add_option("--classifiers", config.classifiers, "Comma list from dt,rf,lr,nb,mlp");
    evaluate->add_option("--kfolds", config.kfolds, "Cross-validation folds (default 10)");
    evaluate->add_option("--grid-config", config.grid_config, "JSON hyperparameter grids");

    CLI::App* report = app.add_subcommand("report", "Consolidated summary from prior artifacts");
    add_common(report);

    CLI::App* run_all = app.add_subcommand("run-all",
                                           "extract -> stats -> select -> evaluate -> report");
    run_all->add_option("--input", config.input, "Canonical corpus CSV");
    add_common(run_all);
    add_lexical(run_all);
    run_all->add_option("--boruta-iterations", config.boruta_iterations, "Boruta iterations");
    run_all->add_option("--classifiers", config.classifiers, "Comma list from dt,rf,lr,nb,mlp");
    run_all->add_option("--kfolds", config.kfolds, "Cross-validation folds (default 10)");
    run_all->add_option("--grid-config", config.grid_config, "JSON hyperparameter grids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : lincue::cli::kExitUsage;
    }

    if (convert->parsed()) return lincue::cli::cmd_convert(config);
    if (extract->parsed()) return lincue::cli::cmd_extract(config);
    if (stats->parsed()) return lincue::cli::cmd_stats(config);
    if (select->parsed()) return lincue::cli::cmd_select(config);
    if (evaluate->parsed()) return lincue::cli::cmd_evaluate(config);
    if (report->parsed()) return lincue::cli::cmd_report(config);
    if (run_all->parsed()) return lincue::cli::cmd_run_all(config);
    return lincue::cli::kExitUsage;
}
