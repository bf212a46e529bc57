#pragma once

#include <string>
#include <vector>

#include "lincue/evaluation.hpp"
#include "lincue/features.hpp"
#include "lincue/selection.hpp"
#include "lincue/stats.hpp"

namespace lincue {

struct MissingArtifactError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Per-feature class-separation statistics (OVL + Kruskal-Wallis).
struct StatsRow {
    std::string feature;
    double ovl = 0.0;
    OvlScale scale = OvlScale::Medium;
    double kw_h = 0.0;
    double kw_p = 1.0;
};

std::vector<StatsRow> compute_stats_rows(const FeatureMatrix& matrix);

// stats.json + stats.csv (rows sorted ascending by OVL) and one
// hist_<feature>.csv per feature: 20 shared equal-width bins, per-class
// densities normalized so sum(density * width) == 1, KDE at bin centers.
void write_stats_artifacts(const FeatureMatrix& matrix, const std::vector<StatsRow>& rows,
                           const std::string& outdir);

// selection_report.json + selection_report.csv (importance-descending rows).
void write_selection_artifacts(const SelectionReport& report, const std::string& outdir);

// eval_grid.csv (subset sizes 1..D plus an Average row, accuracy/F1 column
// pair per classifier), eval_max.csv (per-classifier maxima) and
// eval_detail.json (per-fold detail).
void write_eval_artifacts(const EvalGrid& grid, const std::string& outdir);

// Consolidated report.md + report.json from stats.json, selection_report.json
// and eval_max.csv; throws MissingArtifactError naming any absent input.
void write_summary_report(const std::string& outdir);

}  // namespace lincue
