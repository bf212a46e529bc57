#pragma once

#include <cstdint>
#include <string>

namespace lincue {

struct RunConfig {
    std::string input;
    std::string outdir = "out";
    std::uint64_t seed = 42;  // documented default
    std::string dictionary;
    std::string allowlist;
    std::string lexicon_dir;  // empty selects the bundled lexicons
    std::string grid_config;
    int boruta_iterations = 100;
    std::string classifiers = "dt,rf,lr,nb,mlp";
    int kfolds = 10;

    // convert subcommand
    std::string output;
    std::string text_col = "text";
    std::string label_col = "label";
    std::string id_col;
    std::string sentiment_col;
    std::string source_col;
    std::string fake_values = "fake,deceptive,1";
    std::string real_values = "real,truthful,genuine,0";
};

namespace cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitMissingPrereq = 3;

int cmd_convert(const RunConfig& config);
int cmd_extract(const RunConfig& config);
int cmd_stats(const RunConfig& config);
int cmd_select(const RunConfig& config);
int cmd_evaluate(const RunConfig& config);
int cmd_report(const RunConfig& config);
int cmd_run_all(const RunConfig& config);

}  // namespace cli
}  // namespace lincue
